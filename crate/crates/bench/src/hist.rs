//! Per-author submission counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use capopt_core::AuthorshipInstance;

/// `(submission count, number of authors)` rows in ascending count order.
pub fn frequency_table(inst: &AuthorshipInstance) -> Vec<(usize, usize)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for a in inst.authors() {
        *counts.entry(inst.papers_of(a).len()).or_default() += 1;
    }
    counts.into_iter().collect()
}

pub fn write_table_csv<W: Write>(out: W, rows: &[(usize, usize)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["submissions", "authors"])?;
    for (k, c) in rows {
        w.write_record([k.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln(authors)` against `ln(submissions)` over rows
/// with at least `min_authors` authors. `None` with fewer than two such rows.
pub fn loglog_slope(rows: &[(usize, usize)], min_authors: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|&&(k, c)| k > 0 && c >= min_authors.max(1))
        .map(|&(k, c)| ((k as f64).ln(), (c as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Bar chart with one bar per submission count and a log10 height axis.
pub fn render_svg(rows: &[(usize, usize)], title: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 360.0;
    const PAD: f64 = 48.0;
    let top = rows.iter().map(|r| r.1).max().unwrap_or(1).max(1);
    let decades = ((top as f64).log10().ceil()).max(1.0);
    let plot_w = W - 2.0 * PAD;
    let plot_h = H - 2.0 * PAD;
    let slot = plot_w / rows.len().max(1) as f64;
    // Count c maps to height log10(c + 1) so single authors stay visible.
    let height = |c: usize| plot_h * ((c as f64 + 1.0).log10() / (decades + 0.05)).min(1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<line x1="{PAD}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/><line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{0}" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    for d in 0..=decades as u32 {
        let v = 10usize.pow(d);
        let y = H - PAD - height(v - 1);
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{y:.1}" x2="{PAD}" y2="{y:.1}" stroke="black"/><text x="{}" y="{:.1}" text-anchor="end">{v}</text>"##,
            PAD - 4.0,
            PAD - 6.0,
            y + 4.0
        );
    }
    let label_every = (rows.len() / 12).max(1);
    for (i, &(k, c)) in rows.iter().enumerate() {
        let h = height(c);
        let x = PAD + i as f64 * slot;
        let _ = writeln!(
            s,
            r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{h:.1}" fill="#4c72b0"><title>{k}: {c}</title></rect>"##,
            x + slot * 0.1,
            H - PAD - h,
            slot * 0.8
        );
        if i % label_every == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{}" text-anchor="middle">{k}</text>"#,
                x + slot / 2.0,
                H - PAD + 14.0
            );
        }
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">submissions per author</text>"#, W / 2.0, H - 10.0);
    let _ = writeln!(
        s,
        r#"<text x="14" y="{0}" text-anchor="middle" transform="rotate(-90 14 {0})">authors (log scale)</text>"#,
        H / 2.0
    );
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
