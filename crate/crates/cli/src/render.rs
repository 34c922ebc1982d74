//! Text rendering of a [`Report`].

use std::fmt::Write;

use crate::report::{DiamondInfo, GradedDim, Report};

/// Rows of the diamond with `(0,0)` on top; `a` grows down-left and `b`
/// down-right, so each row lists decreasing `a`.
pub fn diamond_lines(d: &DiamondInfo) -> Vec<String> {
    let n = d.d.max(0) as usize;
    let width = d
        .h
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    let cell = width + 1;
    let rows: Vec<Vec<usize>> = (0..=2 * n)
        .map(|s| {
            (0..=s)
                .rev()
                .filter(|&a| a <= n && s - a <= n)
                .map(|a| d.h[a][s - a])
                .collect()
        })
        .collect();
    rows.iter()
        .map(|r| {
            let indent = (n + 1 - r.len()) * cell;
            let mut line = " ".repeat(indent);
            for (i, x) in r.iter().enumerate() {
                if i > 0 {
                    line.push_str(&" ".repeat(2 * cell - width));
                }
                write!(line, "{x:>width$}").unwrap();
            }
            line.trim_end().to_string()
        })
        .collect()
}

fn dims(g: &[GradedDim]) -> String {
    g.iter()
        .map(|x| format!("{}:{}", x.degree, x.dim))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let mut line = |t: String| {
        s.push_str(&t);
        s.push('\n');
    };
    line(format!("command: {}", r.command));
    line(format!("f = {}", r.polynomial));
    line(format!("variables: {}", r.vars.join(", ")));
    line(format!(
        "weights: d0 = {}, d = ({}), q = ({})",
        r.weights.d0,
        r.weights.d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        r.weights.q.join(", ")
    ));
    if let Some(g) = &r.graph {
        let arrows: Vec<String> = g
            .kappa
            .iter()
            .enumerate()
            .map(|(j, &k)| format!("{} -> {}", r.vars[j], r.vars[k - 1]))
            .collect();
        line(format!(
            "graph: {} component(s); {}",
            g.components,
            arrows.join(", ")
        ));
        line(format!("graph monomials: {}", g.graph_monomials.join(", ")));
    }
    if let Some(a) = &r.analysis {
        line(format!(
            "Calabi-Yau: {} (sum of weights {}), c_hat = {}",
            if a.calabi_yau { "yes" } else { "no" },
            a.weight_sum,
            a.c_hat
        ));
        line(format!("star-shaped: {}", if a.star_shaped { "yes" } else { "no" }));
        line(format!("classification: {}", a.classification));
        for at in &a.atoms {
            line(format!(
                "  {} on ({}) with exponents ({})",
                at.kind,
                at.vars.join(", "),
                at.exponents.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
        line(format!("additional terms: {}", a.additional_terms));
        if let Some(t) = &a.transpose {
            line(format!("transpose: {t}"));
        }
    }
    if let Some(sym) = &r.symmetries {
        line(format!(
            "j_f = {} ({}in SL)",
            sym.jf,
            if sym.jf_in_sl { "" } else { "not " }
        ));
        line(format!(
            "diagonal symmetries: order {}, invariant factors ({}), generators {}",
            sym.diagonal.order,
            sym.diagonal
                .invariant_factors
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            sym.diagonal.generators.join(", ")
        ));
        line(format!(
            "diagonal symmetries in SL: order {}, generators {}",
            sym.sl_diagonal.order,
            sym.sl_diagonal.generators.join(", ")
        ));
    }
    if let Some(j) = &r.jacobian {
        line(format!("mu = {}, c_hat = {}", j.mu, j.c_hat));
        line(format!("[hess(f)] = {}", j.hessian_class));
        line(format!("graded dimensions: {}", dims(&j.graded_dims)));
        line(format!(
            "product formula: {} ({})",
            dims(&j.oracle_dims),
            if j.oracle_agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    if let Some(g) = &r.group {
        line(format!(
            "group: order {}, {} conjugacy classes, generators {}",
            g.order,
            g.conjugacy_class_count,
            g.generators.join(", ")
        ));
        line(format!(
            "contains j_f: {}, in SL: {}",
            if g.contains_jf { "yes" } else { "no" },
            if g.is_sl { "yes" } else { "no" }
        ));
    }
    if let Some(secs) = &r.sectors {
        line(format!("sectors ({}):", secs.len()));
        for x in secs {
            line(format!("  {:<32} N_g = {}, age = {}, mu = {}", x.g, x.n_g, x.age, x.mu));
        }
    }
    if let Some(d) = &r.diamond {
        line(format!("diamond (D = {}, total {}):", d.d, d.total));
        for l in diamond_lines(d) {
            line(format!("  {l}"));
        }
        for [a, b, k] in &d.outside {
            line(format!("  outside: h^{{{a},{b}}} = {k}"));
        }
    }
    if let Some(v) = &r.verification {
        line("verification:".into());
        if let Some(e) = &v.error {
            line(format!("  not run: {e}"));
        }
        for c in &v.checks {
            line(format!(
                "  [{}] {}: {}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.witness
            ));
        }
    }
    s
}
