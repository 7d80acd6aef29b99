//! Deterministic SVG rendering of a polyline: fixed 9-significant-digit
//! number formatting, imaginary axis pointing up, origin marked in red.

use num_complex::Complex64;

/// Format with 9 significant digits and no trailing zeros, so rendering the
/// same curve twice yields identical bytes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (8 - exp).clamp(0, 30) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" { "0".into() } else { t.to_string() }
    } else {
        s
    }
}

pub fn render_polyline(points: &[Complex64], scale: f64) -> String {
    // flip the imaginary axis so positive imaginary renders upward
    let flipped: Vec<(f64, f64)> = points.iter().map(|p| (p.re * scale, -p.im * scale)).collect();
    let min_x = flipped.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = flipped.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = flipped.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = flipped.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let extent = (max_x - min_x).max(max_y - min_y).max(1.0);
    let margin = extent * 0.05;
    let stroke = extent / 400.0;
    let marker = extent / 120.0;

    let mut pts = String::new();
    for (i, (x, y)) in flipped.iter().enumerate() {
        if i > 0 {
            pts.push(' ');
        }
        pts.push_str(&fmt_sig(*x));
        pts.push(',');
        pts.push_str(&fmt_sig(*y));
    }

    let view = format!(
        "{} {} {} {}",
        fmt_sig(min_x - margin),
        fmt_sig(min_y - margin),
        fmt_sig(max_x - min_x + 2.0 * margin),
        fmt_sig(max_y - min_y + 2.0 * margin),
    );
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\">\n",
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\" ",
            "stroke-linejoin=\"round\" stroke-linecap=\"round\" points=\"{points}\"/>\n",
            "<circle cx=\"{ox}\" cy=\"{oy}\" r=\"{r}\" fill=\"red\"/>\n",
            "</svg>\n"
        ),
        view = view,
        stroke = fmt_sig(stroke),
        points = pts,
        ox = fmt_sig(flipped[0].0),
        oy = fmt_sig(flipped[0].1),
        r = fmt_sig(marker),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(123.456789123), "123.456789");
        assert_eq!(fmt_sig(0.000123456789123), "0.000123456789");
    }

    #[test]
    fn svg_is_deterministic() {
        let pts = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.5, -0.866025403),
        ];
        let a = render_polyline(&pts, 40.0);
        let b = render_polyline(&pts, 40.0);
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.contains("<polyline"));
        assert!(a.contains("circle"));
    }
}
