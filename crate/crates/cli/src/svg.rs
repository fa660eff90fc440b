//! Static SVG rendering of an isoline extraction: level lines in red over
//! the data points (white circles), with optional implied-normal arrows.

use cloudsig_core::{IsolineSet, PointCloud, SignatureModel, Vector};

/// Render the scene. World y points up; the SVG transform flips it.
pub fn render(
    set: &IsolineSet,
    cloud: &PointCloud,
    normals: Option<&SignatureModel>,
) -> String {
    let [x0, y0, x1, y1] = set.bbox;
    let (w, h) = (x1 - x0, y1 - y0);
    let stroke = 0.004 * w.max(h);
    let dot = 0.008 * w.max(h);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {} {w} {h}\">\n",
        -y1
    ));
    out.push_str(&format!(
        "  <rect x=\"{x0}\" y=\"{}\" width=\"{w}\" height=\"{h}\" fill=\"#16324f\"/>\n",
        -y1
    ));

    for line in &set.polylines {
        let mut d = String::new();
        for (i, v) in line.vertices.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{} {} ", v[0], -v[1]));
        }
        if line.closed {
            d.push('Z');
        }
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"#e03131\" stroke-width=\"{stroke}\"/>\n",
            d.trim_end()
        ));
    }

    if let Some(model) = normals {
        let arrow = 0.06 * w.max(h);
        for p in cloud.points() {
            if let Ok(est) = model.normal_at(&Vector::from_vec(vec![p[0], p[1]])) {
                let tip = [p[0] + arrow * est.normal[0], p[1] + arrow * est.normal[1]];
                out.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#74c0fc\" stroke-width=\"{}\"/>\n",
                    p[0], -p[1], tip[0], -tip[1], 0.6 * stroke
                ));
            }
        }
    }

    for p in cloud.points() {
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{dot}\" fill=\"#ffffff\" stroke=\"#16324f\" stroke-width=\"{}\"/>\n",
            p[0], -p[1], 0.3 * stroke
        ));
    }

    out.push_str("</svg>\n");
    out
}
