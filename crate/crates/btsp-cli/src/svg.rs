//! SVG rendering of point instances: blue circles for the blue side,
//! red for the red side, city numbers as labels, and an optional closed
//! tour polygon.

use btsp::{Color, Coloring, PointSet, Tour};

const MARGIN: f64 = 6.0;

pub fn render(points: &PointSet, coloring: &Coloring, tour: Option<&Tour>) -> String {
    let xs: Vec<f64> = points.points().iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.points().iter().map(|p| p.1).collect();
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (max_x - min_x) + 2.0 * MARGIN;
    let height = (max_y - min_y) + 2.0 * MARGIN;
    // flip y so the plot reads with y growing upward
    let tx = |x: f64| x - min_x + MARGIN;
    let ty = |y: f64| max_y - y + MARGIN;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.2} {:.2}\">\n",
        width, height
    ));
    if let Some(t) = tour {
        let pts: Vec<String> = t
            .sequence()
            .iter()
            .map(|&city| {
                let (x, y) = points.point(city);
                format!("{:.2},{:.2}", tx(x), ty(y))
            })
            .collect();
        out.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"#444444\" stroke-width=\"0.6\"/>\n",
            pts.join(" ")
        ));
    }
    for city in 1..=points.len() {
        let (x, y) = points.point(city);
        let fill = match coloring.color_of(city) {
            Color::Blue => "blue",
            Color::Red => "red",
        };
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.4\" fill=\"{}\"/>\n",
            tx(x),
            ty(y),
            fill
        ));
    }
    for city in 1..=points.len() {
        let (x, y) = points.point(city);
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"3.2\" font-family=\"sans-serif\">{}</text>\n",
            tx(x) + 1.8,
            ty(y) - 1.8,
            city
        ));
    }
    out.push_str("</svg>\n");
    out
}
