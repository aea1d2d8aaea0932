//! Text and LaTeX renderings of result documents.

use std::fmt::Write;

use mickelsson::Poly;

use crate::doc::{affine_from_doc, ClassDoc, GeneratorDoc, GeneratorsDoc, MonomialDoc, ScalarDoc};
use crate::error::CliError;

fn h_name(k: usize) -> String {
    format!("h_{}", k + 1)
}

fn poly_of(d: &ScalarDoc) -> Result<Poly, CliError> {
    let mut num = Poly::zero();
    for t in &d.num_poly {
        let c = t.coeff.parse().map_err(|_| CliError::Usage(format!("not a rational number: `{}`", t.coeff)))?;
        num = &num + &Poly::monomial(t.exp.clone(), c);
    }
    Ok(num)
}

/// Numerator and the factored denominator, with `1` when there is none.
fn scalar_parts(d: &ScalarDoc) -> Result<(String, Vec<String>), CliError> {
    let num = poly_of(d)?.render(&h_name);
    let dens = d.den_factors.iter().map(|f| Ok(affine_from_doc(f)?.to_string())).collect::<Result<_, CliError>>()?;
    Ok((num, dens))
}

fn scalar_text(d: &ScalarDoc) -> Result<String, CliError> {
    let (num, dens) = scalar_parts(d)?;
    if dens.is_empty() {
        return Ok(num);
    }
    let num = if d.num_poly.len() > 1 { format!("({num})") } else { num };
    Ok(format!("{num}/{}", dens.iter().map(|f| format!("({f})")).collect::<String>()))
}

fn scalar_latex(d: &ScalarDoc) -> Result<String, CliError> {
    let (num, dens) = scalar_parts(d)?;
    if dens.is_empty() {
        return Ok(num);
    }
    Ok(format!("\\frac{{{num}}}{{{}}}", dens.iter().map(|f| format!("({f})")).collect::<String>()))
}

fn monomial_text(m: &MonomialDoc) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(l, p)| if *p == 1 { l.clone() } else { format!("{l}^{p}") }).collect::<Vec<_>>().join(" ")
}

fn monomial_latex(m: &MonomialDoc) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(l, p)| if *p == 1 { l.clone() } else { format!("{l}^{{{p}}}") }).collect()
}

fn generator_text(out: &mut String, g: &GeneratorDoc) -> Result<(), CliError> {
    let _ = writeln!(out, "z[{}] ({}, class {}, weight ({}))", g.node, g.side, g.class, g.weight.join(", "));
    for t in &g.terms {
        let _ = writeln!(
            out,
            "  route ({}): {} {} · [{}]",
            t.route.join(", "),
            t.factor,
            monomial_text(&t.monomial),
            scalar_text(&t.coefficient)?
        );
    }
    let mut parts = Vec::new();
    for t in &g.element {
        parts.push(format!("{} · [{}]", monomial_text(&t.monomial), scalar_text(&t.coefficient)?));
    }
    let _ = writeln!(out, "  = {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") });
    Ok(())
}

pub fn generators_text(doc: &GeneratorsDoc) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "{}{} with g generated by {:?}", doc.algebra.series, doc.algebra.rank, doc.levi);
    for g in &doc.generators {
        generator_text(&mut out, g)?;
    }
    let oracle = match doc.verification.oracle {
        Some(b) => b.to_string(),
        None => "not run".into(),
    };
    let _ = writeln!(out, "invariance: {}, oracle: {oracle}", doc.verification.invariance);
    Ok(out)
}

/// Route terms as `φ`-products against `ψ` of the last node, then the
/// normal-ordered element.
pub fn generators_latex(doc: &GeneratorsDoc) -> Result<String, CliError> {
    let mut out = String::from("\\begin{align*}\n");
    let lines: Vec<String> = doc
        .generators
        .iter()
        .map(|g| {
            let mut routes = Vec::new();
            for t in &g.terms {
                let phis: String = t.route.windows(2).map(|w| format!("\\varphi_{{{}, {}}}", w[0], w[1])).collect();
                let psi = format!("\\psi_{{{}}}", t.route.last().expect("routes are nonempty"));
                let (num, dens) = scalar_parts(&t.coefficient)?;
                let b = if dens.is_empty() && num == "1" { String::new() } else { format!("\\,{}", scalar_latex(&t.coefficient)?) };
                routes.push(format!("{phis}{psi}{b}"));
            }
            let mut normal = Vec::new();
            for t in &g.element {
                let (num, dens) = scalar_parts(&t.coefficient)?;
                let c = if dens.is_empty() && num == "1" { String::new() } else { format!("\\,{}", scalar_latex(&t.coefficient)?) };
                normal.push(format!("{}{c}", monomial_latex(&t.monomial)));
            }
            Ok(format!(
                "z_{{{}}}^{{{}}} &= {} \\\\\n  &= {}",
                g.node,
                if g.side == "plus" { "+" } else { "-" },
                routes.join(" + "),
                normal.join(" + ")
            ))
        })
        .collect::<Result<_, CliError>>()?;
    out.push_str(&lines.join(" \\\\\n"));
    out.push_str("\n\\end{align*}\n");
    Ok(out)
}

pub fn class_text(out: &mut String, c: &ClassDoc) {
    let _ = writeln!(out, "class {} ({}): {} nodes", c.class, c.side, c.nodes.len());
    for n in &c.nodes {
        let _ = writeln!(out, "  {} weight ({})", n.label, n.weight.join(", "));
    }
    for a in &c.arrows {
        let _ = writeln!(out, "  {} <-[α_{}, {}]- {}", a.from, a.root, a.entry, a.to);
    }
}
