//! CSV and SVG renderings of a Newton diagram.

use std::fmt::Write;

use newton_core::polyhedron::Polyhedron;
use newton_core::ExtendedNat;

/// One row per vertex of the polyhedron, coordinates `x1..xn`.
pub fn csv(p: &Polyhedron) -> String {
    let mut s = (1..=p.dim()).map(|j| format!("x{j}")).collect::<Vec<_>>().join(",");
    s.push('\n');
    for v in p.vertices() {
        s.push_str(&v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// Drawing of `N₊(F)` for two variables: shaded region, diagram segments, vertices and axis intercepts.
pub fn svg(p: &Polyhedron) -> Result<String, String> {
    if p.dim() != 2 {
        return Err(format!("svg diagrams need two variables, got {}", p.dim()));
    }
    if p.is_flat() {
        return Err("polynomial is flat".into());
    }
    let verts = p.vertices();
    let rho = p.rho();
    let extent = verts.iter().flat_map(|v| v.iter().copied()).max().unwrap_or(1).max(1) + 1;
    let unit = (SIZE - 2.0 * MARGIN) / extent as f64;
    let x = |a: i64| MARGIN + a as f64 * unit;
    let y = |b: i64| SIZE - MARGIN - b as f64 * unit;

    // Vertices sorted by the first coordinate run along the boundary from the z2 side to the z1 side.
    let mut chain: Vec<&Vec<i64>> = verts.iter().collect();
    chain.sort();
    let mut region = format!("{:.1},{:.1}", x(chain[0][0]), y(extent));
    for v in &chain {
        write!(region, " {:.1},{:.1}", x(v[0]), y(v[1])).unwrap();
    }
    let last = chain[chain.len() - 1];
    write!(region, " {:.1},{:.1} {:.1},{:.1}", x(extent), y(last[1]), x(extent), y(extent)).unwrap();

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    writeln!(s, r##"<polygon points="{region}" fill="#dbe8f6" stroke="none"/>"##).unwrap();
    for k in 0..=extent {
        writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#eeeeee"/>"##, x(k), y(0), x(k), y(extent)).unwrap();
        writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#eeeeee"/>"##, x(0), y(k), x(extent), y(k)).unwrap();
    }
    writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#, x(0), y(0), x(extent), y(0)).unwrap();
    writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#, x(0), y(0), x(0), y(extent)).unwrap();
    for face in p.bounded_faces().into_iter().filter(|f| f.dim == 1) {
        let (a, b) = (&face.vertices[0], &face.vertices[1]);
        writeln!(
            s,
            r##"<line class="segment" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#1f4e99" stroke-width="3"/>"##,
            x(a[0]),
            y(a[1]),
            x(b[0]),
            y(b[1])
        )
        .unwrap();
    }
    for v in verts {
        writeln!(s, r##"<circle class="vertex" cx="{:.1}" cy="{:.1}" r="4" fill="#1f4e99"/>"##, x(v[0]), y(v[1])).unwrap();
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="12">({}, {})</text>"#, x(v[0]) + 6.0, y(v[1]) - 6.0, v[0], v[1]).unwrap();
    }
    for (j, r) in rho.iter().enumerate() {
        if let ExtendedNat::Finite(k) = r {
            let k = *k as i64;
            let (cx, cy) = if j == 0 { (x(k), y(0)) } else { (x(0), y(k)) };
            writeln!(s, r##"<circle class="intercept" cx="{cx:.1}" cy="{cy:.1}" r="6" fill="none" stroke="#c0392b" stroke-width="2"/>"##)
                .unwrap();
            let (tx, ty) = if j == 0 { (cx - 4.0, cy + 18.0) } else { (cx - 34.0, cy + 4.0) };
            writeln!(s, r#"<text x="{tx:.1}" y="{ty:.1}" font-size="12">ρ{}={k}</text>"#, j + 1).unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use newton_core::parse;

    #[test]
    fn csv_lists_vertices() {
        let p = Polyhedron::from_poly(&parse("|z1|^2 + |z2|^4", 2).unwrap());
        assert_eq!(csv(&p), "x1,x2\n0,4\n2,0\n");
    }

    #[test]
    fn svg_marks_segments_and_intercepts() {
        let p = Polyhedron::from_poly(&parse("|z1|^8 + |z1 z2|^2 + |z2|^6", 2).unwrap());
        let s = svg(&p).unwrap();
        assert_eq!(s.matches("class=\"segment\"").count(), 2);
        assert_eq!(s.matches("class=\"intercept\"").count(), 2);
        assert!(s.contains("ρ1=8") && s.contains("ρ2=6"));
    }

    #[test]
    fn svg_rejects_three_variables() {
        let p = Polyhedron::from_poly(&parse("|z1|^2 + |z2|^2 + |z3|^2", 3).unwrap());
        assert!(svg(&p).is_err());
    }
}
