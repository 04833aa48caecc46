//! Minimal SVG writer for growth plots: axes plus a polyline of
//! log10(deg_k(f^l)) against l, no plotting dependency.

use toricdyn_core::Int;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

pub fn growth_plot(values: &[Int], k: usize) -> String {
    let logs: Vec<f64> = values
        .iter()
        .map(|v| {
            let s = v.to_string();
            // log10 from digit count + leading digits: fine for a plot
            let digits = s.trim_start_matches('-').len() as f64;
            let lead: f64 = s
                .trim_start_matches('-')
                .chars()
                .take(15)
                .collect::<String>()
                .parse()
                .unwrap_or(1.0);
            digits - 15.0 + lead.log10()
        })
        .collect();
    let ymax = logs.iter().cloned().fold(1.0_f64, f64::max);
    let n = logs.len().max(2) as f64;
    let x = |l: f64| MARGIN + (l - 1.0) / (n - 1.0) * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - (v / ymax) * (HEIGHT - 2.0 * MARGIN);
    let points: Vec<String> = logs
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{:.2},{:.2}", x(i as f64 + 1.0), y(*v)))
        .collect();
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            "\n",
            r#"<rect width="{w}" height="{h}" fill="white"/>"#,
            "\n",
            r#"<line x1="{m}" y1="{ybase}" x2="{xend}" y2="{ybase}" stroke="black"/>"#,
            "\n",
            r#"<line x1="{m}" y1="{m}" x2="{m}" y2="{ybase}" stroke="black"/>"#,
            "\n",
            r#"<text x="{xmid}" y="{xlab}" font-size="14" text-anchor="middle">l</text>"#,
            "\n",
            r#"<text x="14" y="{ymid}" font-size="14" text-anchor="middle" transform="rotate(-90 14 {ymid})">log10 deg_{k}(f^l)</text>"#,
            "\n",
            r#"<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
            "\n",
            "</svg>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        m = MARGIN,
        ybase = HEIGHT - MARGIN,
        xend = WIDTH - MARGIN,
        xmid = WIDTH / 2.0,
        xlab = HEIGHT - 14.0,
        ymid = HEIGHT / 2.0,
        k = k,
        points = points.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_is_well_formed() {
        let values: Vec<Int> = (1..=8u32).map(|l| Int::from(3).pow(l)).collect();
        let svg = growth_plot(&values, 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
