use std::fmt::Write;

use super::document::ReportDocument;

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn triple(v: &[String; 3]) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}

/// Plain text, one check per line.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let o = &mut out;
    let _ = writeln!(o, "{} {} {} {}", doc.tool, doc.version, doc.command, doc.system);
    if let Some(f) = &doc.frame {
        let _ = writeln!(o, "v = {}", triple(&f.v));
        if let (Some(u), Some(w)) = (&f.u, &f.w) {
            let _ = writeln!(o, "u = {}", triple(u));
            let _ = writeln!(o, "w = {}", triple(w));
        }
    }
    if let Some(m) = &doc.multiplier {
        let _ = writeln!(o, "M = {m}");
    }
    if let Some(forms) = &doc.forms {
        let _ = writeln!(o, "alpha = {}", forms.alpha);
        let _ = writeln!(o, "beta = {}", forms.beta);
        let _ = writeln!(o, "gamma = {}", forms.gamma);
        if let (Some(a), Some(s)) = (&forms.potential, &forms.scale) {
            let _ = writeln!(o, "A = {}", triple(a));
            let _ = writeln!(o, "curl(A) = {s} * M v");
        }
    }
    if !doc.checks.is_empty() {
        let _ = writeln!(o, "checks:");
        for c in &doc.checks {
            let _ = write!(o, "  {:<5} {} [{}]", c.status, c.check, c.anchor);
            if let Some(r) = &c.residual {
                let _ = write!(o, " residual: {r}");
            }
            o.push('\n');
        }
    }
    if !doc.concordance.is_empty() {
        let _ = writeln!(o, "concordance:");
        for c in &doc.concordance {
            let _ = write!(o, "  {:<8} {} {}", c.status, c.form, c.component);
            if !c.matches() {
                let _ = write!(o, " printed {} computed {}", c.printed, c.computed);
                if let Some(r) = &c.ratio {
                    let _ = write!(o, " ratio {r}");
                }
                if !c.printed_only.is_empty() || !c.computed_only.is_empty() {
                    let _ = write!(
                        o,
                        " terms over {}: printed [{}] computed [{}]",
                        c.denominator.as_deref().unwrap_or("1"),
                        c.printed_only.join(", "),
                        c.computed_only.join(", ")
                    );
                }
                if let Some(m) = &c.monomial_factor {
                    let _ = write!(o, " factor {m}");
                }
            }
            o.push('\n');
        }
    }
    let n = &doc.numeric;
    if !n.samples.is_empty() || !n.finite_differences.is_empty() || n.integration.is_some() {
        let _ = writeln!(o, "numeric:");
    }
    for s in &n.samples {
        let v = &s.verdict;
        let _ = writeln!(
            o,
            "  {:<5} sample {} ({}) points {} skipped {} max {:e}",
            if s.consistent { "ok" } else { "FAIL" },
            v.identity,
            s.exact_status,
            v.points,
            v.skipped,
            v.max_residual
        );
    }
    for f in &n.finite_differences {
        let _ = writeln!(
            o,
            "  {:<5} {} points {} h {:e} max {:e} tol {:e}",
            if f.pass { "ok" } else { "FAIL" },
            f.identity,
            f.points,
            f.step,
            f.max_error,
            f.tolerance
        );
    }
    if let Some(i) = &n.integration {
        let _ = writeln!(
            o,
            "  rk4 from ({}, {}, {}) to t = {} with h = {} ({} steps): ({}, {}, {})",
            i.from[0], i.from[1], i.from[2], i.t_end, i.h, i.steps, i.final_state[0], i.final_state[1], i.final_state[2]
        );
        for d in &i.drifts {
            let status = if d.pass { "ok" } else { "FAIL" };
            let _ = writeln!(o, "  {status:<5} drift {} {:e} tol {:e}", d.integral, d.drift, d.tolerance);
        }
        if let Some(c) = &i.convergence_order {
            let status = if c.pass { "ok" } else { "FAIL" };
            let _ = writeln!(o, "  {status:<5} order {:.4} (expected {} +- {})", c.order, c.expected, c.tolerance);
        }
    }
    for note in &doc.notes {
        let _ = writeln!(o, "note: {note}");
    }
    if let Some(e) = &doc.error {
        let _ = writeln!(o, "error: {e}");
    }
    let _ = writeln!(o, "exit status {}", doc.exit_status);
    out
}
