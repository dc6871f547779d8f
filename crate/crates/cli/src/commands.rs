use dq_core::atlas::{self, ingest_polygon, AffineMap};
use dq_core::corpus;
use dq_core::matrix::Matrix;
use dq_core::moyal::{axiom, verify_dq_axioms, verify_dq_axioms_against, StarProduct};
use dq_core::multi::{self, ProductSpace};
use dq_core::poisson::{bivector_from_form, bracket as poisson_bracket, SymplecticForm};
use dq_core::report::CheckReport;
use dq_core::transport::{self, check_symplecto, SymplectoMap, TransportedStar};
use dq_core::ExactComplex;
use serde_json::{json, Value};

use crate::{inputs, CliError, CorpusArgs, Mutant, Run};

fn text_only(inputs: Value, outputs: Value, text: String) -> Run {
    Run {
        inputs,
        outputs,
        text,
        reports: Vec::new(),
    }
}

pub fn star(form: &str, order: usize, f: &str, g: &str) -> Result<Run, CliError> {
    let w = inputs::form(form)?;
    let m = w.dim();
    let (fs, gs) = (inputs::series(f, m, order)?, inputs::series(g, m, order)?);
    let out = StarProduct::from_form(&w, order)?.star_series(&fs, &gs)?;
    Ok(text_only(
        json!({ "form": w.matrix(), "order": order, "f": fs, "g": gs }),
        json!({ "product": out, "coefficients": out.coeffs() }),
        out.to_string(),
    ))
}

pub fn bracket(form: &str, f: &str, g: &str) -> Result<Run, CliError> {
    let w = inputs::form(form)?;
    let m = w.dim();
    let (fp, gp) = (inputs::poly(f, m)?, inputs::poly(g, m)?);
    let out = poisson_bracket(&bivector_from_form(&w)?, &fp, &gp)?;
    Ok(text_only(
        json!({ "form": w.matrix(), "f": fp, "g": gp }),
        json!({ "bracket": out }),
        out.to_string(),
    ))
}

fn corpus_json(c: &CorpusArgs, pairs: usize, triples: usize, degree: u32) -> Value {
    json!({
        "seed": c.seed,
        "pairs": pairs,
        "triples": triples,
        "max_degree": degree,
        "generator_version": corpus::GENERATOR_VERSION,
    })
}

pub fn verify_dq(
    form: &str,
    order: usize,
    c: &CorpusArgs,
    mutant: Option<Mutant>,
) -> Result<Run, CliError> {
    let w = inputs::form(form)?;
    let (pairs, triples, degree) = (
        c.pairs.unwrap_or(100),
        c.triples.unwrap_or(100),
        c.degree.unwrap_or(4),
    );
    let data = corpus::axiom_corpus(c.seed, w.dim(), order, pairs, triples, degree);
    let pi = bivector_from_form(&w)?;
    let mut report = match mutant {
        None => verify_dq_axioms(&StarProduct::new(pi, order)?, &data)?,
        Some(Mutant::DropFactorial) => {
            let half_i = ExactComplex::gaussian(0, 1, 1, 2);
            let weights = (0..=order).map(|k| half_i.pow(k as u32)).collect();
            verify_dq_axioms(&StarProduct::with_weights(pi, weights)?, &data)?
        }
        Some(Mutant::WrongSign) => {
            let flipped = StarProduct::new(pi.neg(), order)?;
            verify_dq_axioms_against(&flipped, &|f, g| poisson_bracket(&pi, f, g), &data)?
        }
    };
    if let Some(m) = mutant {
        report.title = format!(
            "{} [mutant: {}]",
            report.title,
            serde_json::to_value(m)
                .unwrap_or_default()
                .as_str()
                .unwrap_or("")
        );
    }
    let text = report.to_string();
    Ok(Run {
        inputs: json!({
            "form": w.matrix(),
            "order": order,
            "corpus": corpus_json(c, pairs, triples, degree),
            "mutant": mutant,
        }),
        outputs: json!({ "axioms": [axiom::PRODUCT, axiom::UNIT, axiom::COMMUTATOR, axiom::ASSOCIATIVITY] }),
        text,
        reports: vec![report],
    })
}

pub fn surface_ingest(arg: &str) -> Result<Run, CliError> {
    let pg = inputs::surface(arg)?;
    let s = ingest_polygon(&pg)?;
    let orders = s.zero_orders();
    Ok(text_only(
        json!({ "surface": arg, "gluing": pg }),
        json!({
            "genus": s.genus,
            "zero_orders": orders,
            "order_sum": orders.iter().sum::<u32>(),
            "surface": s,
        }),
        s.to_string(),
    ))
}

/// `(ζ + c, λ + c)`, or `(ζ, λ + 1)` when `c = 0`.
fn corrupted_transition(c: &ExactComplex) -> AffineMap {
    let fiber = if c.is_zero() {
        ExactComplex::one()
    } else {
        c.clone()
    };
    AffineMap::new(Matrix::identity(2), vec![c.clone(), fiber]).expect("2x2 map")
}

pub fn patch_check(
    arg: &str,
    order: usize,
    c: &CorpusArgs,
    corrupt: bool,
) -> Result<Run, CliError> {
    let pg = inputs::surface(arg)?;
    let s = ingest_polygon(&pg)?;
    let (count, degree) = (c.pairs.unwrap_or(50), c.degree.unwrap_or(3));
    let pairs = corpus::poly_pairs(c.seed, 2, count, degree);
    let report = if corrupt {
        let mut report = CheckReport::new(
            "chart star products patch together [corrupted transitions]",
            Some(order),
        );
        for o in &s.overlaps {
            let forward = corrupted_transition(&o.shift);
            for (f, g) in &pairs {
                let r = atlas::overlap_agreement_check_with(&s, o.id, &forward, f, g, order)?;
                report.record("overlap-agreement", r, || {
                    format!(
                        "overlap {} ({} -> {}): f = {f}, g = {g}",
                        o.id, o.from, o.to
                    )
                });
            }
        }
        report
    } else {
        atlas::patch_check(&s, &pairs, order)?
    };
    let text = format!(
        "{s}\n{} charts, {} overlaps, {} triple overlaps\n{report}",
        s.charts.len(),
        s.overlaps.len(),
        s.triples.len()
    );
    Ok(Run {
        inputs: json!({
            "surface": arg,
            "order": order,
            "corpus": corpus_json(c, count, 0, degree),
            "corrupt": corrupt,
        }),
        outputs: json!({ "charts": s.charts, "overlaps": s.overlaps, "triples": s.triples }),
        text,
        reports: vec![report],
    })
}

pub fn product_star(n: usize, order: usize, f: &str, g: &str) -> Result<Run, CliError> {
    let ps = ProductSpace::new(n)?;
    let (fs, gs) = (
        inputs::series(f, ps.dim(), order)?,
        inputs::series(g, ps.dim(), order)?,
    );
    let out = ps.star_product(order)?.star_series(&fs, &gs)?;
    Ok(text_only(
        json!({ "copies": n, "order": order, "f": fs, "g": gs }),
        json!({ "product": out, "coefficients": out.coeffs() }),
        out.to_string(),
    ))
}

pub fn symmetrize(n: usize, f: &str) -> Result<Run, CliError> {
    if n == 0 {
        return Err(CliError::Malformed("--n must be at least 1".into()));
    }
    let fp = inputs::poly(f, 2 * n)?;
    let out = multi::symmetrize(&fp)?;
    Ok(text_only(
        json!({ "copies": n, "f": fp }),
        json!({ "symmetrized": out }),
        out.to_string(),
    ))
}

fn source_form(map: &SymplectoMap, form: Option<&str>) -> Result<SymplecticForm, CliError> {
    match form {
        Some(arg) => inputs::form(arg),
        None => Ok(SymplecticForm::omega0_product(map.dim() / 2)),
    }
}

pub fn transport(
    map: &str,
    form: Option<&str>,
    order: usize,
    f: &str,
    g: &str,
) -> Result<Run, CliError> {
    let m = inputs::map(map)?;
    let w = source_form(&m, form)?;
    let check = check_symplecto(&m, &w)?;
    let input = json!({ "map": map, "forward": m.forward(), "inverse": m.inverse(), "form": w.matrix(), "order": order, "f": f, "g": g });
    if !check.passed() {
        let text = check.to_string();
        return Ok(Run {
            inputs: input,
            outputs: Value::Null,
            text,
            reports: vec![check],
        });
    }
    let (fs, gs) = (
        inputs::series(f, m.dim(), order)?,
        inputs::series(g, m.dim(), order)?,
    );
    let tq = TransportedStar::new(m, StarProduct::from_form(&w, order)?)?;
    let out = dq_core::moyal::Quantization::star_series(&tq, &fs, &gs)?;
    Ok(Run {
        inputs: input,
        outputs: json!({ "product": out, "coefficients": out.coeffs() }),
        text: out.to_string(),
        reports: vec![check],
    })
}

pub fn verify_transport(
    map: &str,
    form: Option<&str>,
    order: usize,
    c: &CorpusArgs,
    force: bool,
) -> Result<Run, CliError> {
    let m = inputs::map(map)?;
    let w = source_form(&m, form)?;
    let (pairs, triples, degree) = (
        c.pairs.unwrap_or(20),
        c.triples.unwrap_or(10),
        c.degree.unwrap_or(3),
    );
    let data = corpus::axiom_corpus(c.seed, m.dim(), order, pairs, triples, degree);
    let check = check_symplecto(&m, &w)?;
    let input = json!({
        "map": map,
        "forward": m.forward(),
        "inverse": m.inverse(),
        "form": w.matrix(),
        "order": order,
        "corpus": corpus_json(c, pairs, triples, degree),
        "force": force,
    });
    let mut reports = vec![check];
    if reports[0].passed() || force {
        let sp = StarProduct::from_form(&w, order)?;
        let tq = if force {
            TransportedStar::new_unchecked(m, sp)?
        } else {
            TransportedStar::new(m, sp)?
        };
        reports.push(transport::verify_transported_quantization(&tq, &data)?);
    }
    let text = reports
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Run {
        inputs: input,
        outputs: json!({ "checked_axioms": reports.len() > 1 }),
        text,
        reports,
    })
}

pub fn delta(rank: u64, genus: u64) -> Result<Run, CliError> {
    let d = multi::delta(rank, genus)?;
    let dim = d
        .checked_mul(2)
        .ok_or_else(|| CliError::Malformed("2δ overflows u64".into()))?;
    Ok(text_only(
        json!({ "rank": rank, "genus": genus }),
        json!({ "delta": d, "dimension": dim }),
        format!("delta = {d} (rank {rank}, genus {genus}; product space has {dim} coordinates)"),
    ))
}
