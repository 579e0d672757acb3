use btsp::*;
use std::time::Instant;

fn main() {
    for &(k, seed) in &[(250usize, 1u64), (500, 2), (1000, 3), (250, 1), (500, 2), (1000, 3)] {
        let (c, col) = generate_line_instance(k, seed);
        let mut best = f64::MAX;
        for _ in 0..5 {
            let t = Instant::now();
            let (_, len) = solve_pyramidal_btsp(&c, &col).unwrap();
            assert!(len.is_finite());
            best = best.min(t.elapsed().as_secs_f64());
        }
        println!("n={}: best {:.3} ms", 2*k, best * 1e3);
    }
}
