//! Tours, city colorings, and the valley structure of tours.

use crate::error::Error;
use crate::matrix::{DistanceMatrix, Entry};

/// A cyclic tour over cities 1..=n, stored in canonical form: the
/// sequence starts at city 1 and is oriented so the second element is
/// smaller than the last. Canonical form makes tour equality and test
/// expectations deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    seq: Vec<usize>,
}

impl Tour {
    /// Validates that `seq` is a permutation of 1..=n and canonicalizes
    /// it (rotation to city 1, then orientation).
    pub fn new(seq: Vec<usize>) -> Result<Self, Error> {
        let n = seq.len();
        let mut seen = vec![false; n + 1];
        for &c in &seq {
            if c < 1 || c > n || seen[c] {
                return Err(Error::NotAPermutation { n });
            }
            seen[c] = true;
        }
        if n == 0 {
            return Err(Error::NotAPermutation { n });
        }
        Ok(Self {
            seq: canonicalize(seq),
        })
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    /// Canonical cyclic sequence, starting at city 1.
    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// Successor of `city` along the canonical orientation.
    pub fn successor(&self, city: usize) -> usize {
        let pos = self.position(city);
        self.seq[(pos + 1) % self.seq.len()]
    }

    /// Predecessor of `city` along the canonical orientation.
    pub fn predecessor(&self, city: usize) -> usize {
        let pos = self.position(city);
        self.seq[(pos + self.seq.len() - 1) % self.seq.len()]
    }

    fn position(&self, city: usize) -> usize {
        self.seq
            .iter()
            .position(|&c| c == city)
            .expect("city not in tour")
    }
}

fn canonicalize(mut seq: Vec<usize>) -> Vec<usize> {
    let start = seq.iter().position(|&c| c == 1).expect("city 1 present");
    seq.rotate_left(start);
    if seq.len() > 2 && seq[1] > seq[seq.len() - 1] {
        seq[1..].reverse();
    }
    seq
}

/// Which side of the bipartition a city belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Blue,
    Red,
}

/// A bipartition of cities 1..=n into equal-size blue and red sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    blue: Vec<usize>,
    red: Vec<usize>,
    side: Vec<Color>,
}

impl Coloring {
    /// Validates that blue and red partition 1..=n into equal halves.
    pub fn new(mut blue: Vec<usize>, mut red: Vec<usize>) -> Result<Self, Error> {
        blue.sort_unstable();
        red.sort_unstable();
        let n = blue.len() + red.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidColoring(format!(
                "total city count {} is not even and positive",
                n
            )));
        }
        if blue.len() != red.len() {
            return Err(Error::InvalidColoring(format!(
                "sides have sizes {} and {}",
                blue.len(),
                red.len()
            )));
        }
        let mut side = vec![None; n + 1];
        for &c in &blue {
            if c < 1 || c > n || side[c].is_some() {
                return Err(Error::InvalidColoring(format!(
                    "city {} out of range or listed twice",
                    c
                )));
            }
            side[c] = Some(Color::Blue);
        }
        for &c in &red {
            if c < 1 || c > n || side[c].is_some() {
                return Err(Error::InvalidColoring(format!(
                    "city {} out of range or listed twice",
                    c
                )));
            }
            side[c] = Some(Color::Red);
        }
        let side = side
            .into_iter()
            .skip(1)
            .map(|s| s.expect("every city colored"))
            .collect();
        Ok(Self { blue, red, side })
    }

    /// The even-odd coloring: odd cities blue, even cities red.
    pub fn even_odd(n: usize) -> Result<Self, Error> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddCityCount { n });
        }
        Self::new(
            (1..=n).step_by(2).collect(),
            (2..=n).step_by(2).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    pub fn k(&self) -> usize {
        self.blue.len()
    }

    pub fn blue(&self) -> &[usize] {
        &self.blue
    }

    pub fn red(&self) -> &[usize] {
        &self.red
    }

    pub fn color_of(&self, city: usize) -> Color {
        self.side[city - 1]
    }

    /// True iff blue is exactly the odd cities and red the even ones.
    pub fn is_even_odd(&self) -> bool {
        self.blue.iter().all(|&c| c % 2 == 1) && self.red.iter().all(|&c| c % 2 == 0)
    }
}

/// Total length of the cycle, `Forbidden` if any edge is masked.
pub fn tour_length(c: &DistanceMatrix, t: &Tour) -> Entry {
    let seq = t.sequence();
    let n = seq.len();
    let mut sum = 0.0;
    for idx in 0..n {
        match c.get(seq[idx], seq[(idx + 1) % n]) {
            Entry::Finite(v) => sum += v,
            Entry::Forbidden => return Entry::Forbidden,
        }
    }
    Entry::Finite(sum)
}

/// True iff consecutive tour cities always differ in color.
pub fn is_feasible_bipartite(t: &Tour, col: &Coloring) -> bool {
    if t.n() != col.n() {
        return false;
    }
    let seq = t.sequence();
    let n = seq.len();
    (0..n).all(|idx| col.color_of(seq[idx]) != col.color_of(seq[(idx + 1) % n]))
}

/// Cities whose both cyclic neighbors carry larger indices, sorted
/// ascending. City 1 is always a valley.
pub fn valleys(t: &Tour) -> Vec<usize> {
    let seq = t.sequence();
    let n = seq.len();
    let mut out: Vec<usize> = (0..n)
        .filter(|&idx| {
            let c = seq[idx];
            seq[(idx + n - 1) % n] > c && seq[(idx + 1) % n] > c
        })
        .map(|idx| seq[idx])
        .collect();
    out.sort_unstable();
    out
}

/// True iff the tour ascends from city 1 to city n and then descends;
/// equivalently, city 1 is its only valley.
pub fn is_pyramidal(t: &Tour) -> bool {
    valleys(t) == [1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ScalarKind;

    fn tour(seq: &[usize]) -> Tour {
        Tour::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form_starts_at_one_and_orients() {
        assert_eq!(tour(&[3, 4, 1, 2]).sequence(), &[1, 2, 3, 4]);
        assert_eq!(tour(&[1, 4, 3, 2]).sequence(), &[1, 2, 3, 4]);
        assert_eq!(tour(&[2, 1, 4, 3]).sequence(), &[1, 2, 3, 4]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Tour::new(vec![1, 2, 2, 4]).is_err());
        assert!(Tour::new(vec![2, 3, 4, 5]).is_err());
        assert!(Tour::new(vec![]).is_err());
    }

    #[test]
    fn valleys_examples() {
        assert_eq!(valleys(&tour(&[1, 2, 3, 4, 5, 6])), vec![1]);
        assert_eq!(
            valleys(&tour(&[1, 2, 3, 4, 5, 8, 9, 12, 11, 10, 7, 6])),
            vec![1]
        );
        assert_eq!(valleys(&tour(&[1, 4, 2, 6, 3, 5])), vec![1, 2, 3]);
    }

    #[test]
    fn pyramidal_examples() {
        assert!(is_pyramidal(&tour(&[1, 2, 3, 4, 5, 6, 7, 8])));
        assert!(is_pyramidal(&tour(&[1, 2, 3, 4, 5, 8, 9, 12, 11, 10, 7, 6])));
        assert!(!is_pyramidal(&tour(&[1, 4, 2, 6, 3, 5])));
    }

    #[test]
    fn even_odd_feasibility() {
        let col = Coloring::even_odd(6).unwrap();
        assert!(is_feasible_bipartite(&tour(&[1, 2, 3, 4, 5, 6]), &col));
        let col4 = Coloring::even_odd(4).unwrap();
        assert!(!is_feasible_bipartite(&tour(&[1, 3, 2, 4]), &col4));
    }

    #[test]
    fn block_coloring_zigzag_is_feasible() {
        // k = 6, blue 1..=6, red 7..=12, alternating zigzag tour.
        let col = Coloring::new((1..=6).collect(), (7..=12).collect()).unwrap();
        let t = tour(&[1, 7, 2, 9, 4, 11, 6, 12, 5, 10, 3, 8]);
        assert!(is_feasible_bipartite(&t, &col));
        assert!(!col.is_even_odd());
    }

    #[test]
    fn tour_length_zero_matrix() {
        let c = DistanceMatrix::symmetric_from_fn(6, ScalarKind::ExactInteger, |_, _| {
            Entry::Finite(0.0)
        });
        assert_eq!(tour_length(&c, &tour(&[1, 4, 2, 6, 3, 5])), Entry::Finite(0.0));
    }

    #[test]
    fn tour_length_forbidden_edge() {
        let c = DistanceMatrix::symmetric_from_fn(4, ScalarKind::ExactInteger, |i, j| {
            if (i, j) == (2, 3) {
                Entry::Forbidden
            } else {
                Entry::Finite(1.0)
            }
        });
        assert_eq!(tour_length(&c, &tour(&[1, 2, 3, 4])), Entry::Forbidden);
        assert_eq!(tour_length(&c, &tour(&[1, 2, 4, 3])), Entry::Finite(4.0));
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::new(vec![1, 2], vec![3]).is_err());
        assert!(Coloring::new(vec![1, 2], vec![2, 3]).is_err());
        assert!(Coloring::new(vec![1, 5], vec![2, 3]).is_err());
        let c = Coloring::new(vec![3, 1], vec![4, 2]).unwrap();
        assert_eq!(c.blue(), &[1, 3]);
        assert!(c.is_even_odd());
        assert!(!Coloring::new(vec![1, 2], vec![3, 4]).unwrap().is_even_odd());
    }
}
