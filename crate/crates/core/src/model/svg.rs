use std::fmt::Write as _;

use super::{Configuration, Instance};

/// SVG drawing of a packing: the container outline, filled circles and
/// 1-based index labels. The view box spans `[-R, R]^2`, y pointing up.
pub fn render_svg(instance: &Instance, config: &Configuration) -> String {
    let r = config.container_radius;
    let margin = 0.02 * r;
    let side = 2.0 * (r + margin);
    let stroke = r / 400.0;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="{} {} {} {}">"#,
        -r - margin,
        -r - margin,
        side,
        side
    )
    .unwrap();
    writeln!(out, r#"<g transform="scale(1,-1)">"#).unwrap();
    writeln!(
        out,
        r#"<circle cx="0" cy="0" r="{r}" fill="none" stroke="black" stroke-width="{}"/>"#,
        2.0 * stroke
    )
    .unwrap();
    for (i, [x, y]) in config.centers().enumerate() {
        let ri = instance.radius(i);
        // Hue by radius rank so equal circles share a color.
        let hue = 360.0 * ri / instance.max_radius() * 0.75;
        writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="{ri}" fill="hsl({hue:.0},60%,70%)" stroke="black" stroke-width="{stroke}"/>"#
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    for (i, [x, y]) in config.centers().enumerate() {
        let size = (instance.radius(i) * 0.8).max(r / 100.0);
        writeln!(
            out,
            r#"<text x="{x}" y="{}" font-size="{size}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            -y,
            i + 1
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts() {
        let one = Instance::new("a", vec![1.0]).unwrap();
        let svg = render_svg(&one, &Configuration::from_centers(&[[0.0, 0.0]], 1.0));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<text").count(), 1);

        let five = Instance::new("b", vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let centers: Vec<[f64; 2]> = (0..5).map(|i| [i as f64, 0.0]).collect();
        let svg = render_svg(&five, &Configuration::from_centers(&centers, 9.0));
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches("<text").count(), 5);
        assert!(svg.contains(r#"viewBox="-9.18 -9.18 18.36 18.36""#));
        assert!(svg.contains(">5</text>"));
    }
}
