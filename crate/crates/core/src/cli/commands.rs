use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    parse_window, CellFlavor, Cli, Command, ComplexCommand, ModeArg, Outcome, SetKind, SimplexArgs, SimplicialCommand,
};
use crate::algebra::{parse, Element, Parity};
use crate::dg::{cohomology, DgAlgebra};
use crate::document::AlgebraDocument;
use crate::error::{Error, Result};
use crate::forms::{self, cartan_relations_check, cylinder, omega, Witness};
use crate::model::{
    self, algebra_cell, factorize, graded_cells, kunneth, path_object, solve_lift, sym, ungraded_cells, CellKind,
    ChainMap, Complex, FactorizationMode, Lift,
};
use crate::random;
use crate::simplicial::{
    cotensor, increasing_tuples, normalize_tuple, surjectivity_onto, tuple_label, CoefficientAlgebra, DupontOperator,
    FiniteSimplicialSet, IntegralMode, SimplexForms, SimplexMap,
};

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<DgAlgebra> {
    AlgebraDocument::from_json(&read_input(path)?)?.load()
}

fn load_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Error::InvalidInput(format!("malformed {what}: {e}")))
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Outcome> {
    let o = &cli.options;
    let window = parse_window(&o.window)?;
    let cap = o.degcap;
    let mut rng = random::rng(o.seed);
    match &cli.command {
        Command::Check { input } => {
            let a = load_algebra(input)?;
            let h = cohomology(&a, window, cap)?;
            let nonzero: Vec<Value> = h
                .iter()
                .filter(|e| e.dimension > 0)
                .map(|e| json!({"weight": e.weight, "parity": e.parity, "dim": e.dimension, "exact": e.exact}))
                .collect();
            Outcome::ok(json!({"valid": true, "cohomology": nonzero}))
        }
        Command::Cohomology { input } => {
            let a = load_algebra(input)?;
            Outcome::ok(json!({"algebra": AlgebraDocument::of(&a), "cohomology": cohomology(&a, window, cap)?}))
        }
        Command::FormsOmega { input } => {
            let a = load_algebra(input)?;
            let f = omega(&a)?;
            let total = f.total_algebra().is_ok();
            Outcome::checked(
                json!({
                    "generators": f.table().generators(),
                    "de_rham": f.de_rham().named_images(),
                    "internal": f.internal().named_images(),
                    "total_square_zero": total,
                }),
                total,
            )
        }
        Command::CartanCheck { input, pairs } => cartan(&load_algebra(input)?, *pairs, &mut rng),
        Command::Integrate { input, form, var, from, to } => {
            let a = load_algebra(input)?;
            let t = a.table();
            let f = parse(form, t)?;
            let value = forms::integrate(&f, var, &parse(from, t)?, &parse(to, t)?)?;
            Outcome::ok(
                json!({"form": f.to_string(), "variable": var, "from": from, "to": to, "integral": value.to_string()}),
            )
        }
        Command::Berezin { input, form, var } => {
            let a = load_algebra(input)?;
            let f = parse(form, a.table())?;
            let value = forms::berezin(&f, var)?;
            Outcome::ok(json!({"form": f.to_string(), "variable": var, "integral": value.to_string()}))
        }
        Command::CylinderContract { input, form, samples } => {
            let a = load_algebra(input)?;
            let c = cylinder(&a)?;
            let points: Vec<Element> = match form {
                Some(f) => vec![parse(f, c.table())?],
                None => (0..*samples).map(|_| random::element(&mut rng, c.table(), 4, 5)).collect(),
            };
            let mut rows = Vec::new();
            let mut failure: Option<Witness> = None;
            for w in &points {
                let h = c.contraction(w)?;
                let bad = c.verify_contraction(std::slice::from_ref(w))?;
                rows.push(json!({"form": w.to_string(), "contraction": h.to_string(), "identity": bad.is_none()}));
                if failure.is_none() {
                    failure = bad;
                }
            }
            let passed = failure.is_none();
            Outcome::checked(
                json!({
                    "cylinder": c.table().generators(),
                    "identity": "D h + h D = id - j p0",
                    "checked": rows.len(),
                    "forms": if form.is_some() { Value::Array(rows) } else { Value::Null },
                    "witness": failure,
                }),
                passed,
            )
        }
        Command::Simplicial { action } => simplicial(action, o.barycentric),
        Command::Dupont { simplex, form } => {
            simplicial(&SimplicialCommand::Dupont { simplex: simplex.clone(), form: form.clone() }, o.barycentric)
        }
        Command::Cotensor { set, n, k, algebra, zero, surjectivity } => {
            let shape = match (set, k) {
                (SetKind::Simplex, _) => FiniteSimplicialSet::simplex(*n),
                (SetKind::Boundary, _) => FiniteSimplicialSet::boundary(*n),
                (SetKind::Horn, Some(k)) => FiniteSimplicialSet::horn(*n, *k)?,
                (SetKind::Horn, None) => return Err(Error::InvalidInput("a horn needs --k".into())),
            };
            let coefficients = if *zero {
                CoefficientAlgebra::Zero
            } else {
                CoefficientAlgebra::Free(match algebra {
                    Some(p) => load_algebra(p)?,
                    None => DgAlgebra::ground(),
                })
            };
            let entries = cotensor(&coefficients, &shape, window, cap)?;
            let surj = if *surjectivity { Some(surjectivity_onto(&coefficients, &shape, window, cap)?) } else { None };
            let passed = surj.as_ref().is_none_or(|s| s.iter().all(|e| e.surjective));
            Outcome::checked(
                json!({"set": shape.name(), "facets": shape.facets(), "cotensor": entries, "surjectivity": surj}),
                passed,
            )
        }
        Command::PathObject { input, pairs, samples } => {
            let a = match input {
                Some(p) => load_algebra(p)?,
                None => DgAlgebra::ground(),
            };
            let p = path_object(&a)?;
            let report = p.check(&mut rng, *pairs, *samples)?;
            let passed = report.passed();
            Outcome::checked(report, passed)
        }
        Command::Complex { action } => complex(action, &mut rng),
        Command::Cells { flavor, range, algebra } => cells(*flavor, *range, *algebra, window, cap),
        Command::SymKunneth { input } => {
            let v: Complex = load_json(input, "complex")?;
            let a = sym(&v)?;
            let report = kunneth(&v, window, cap)?;
            let passed = report.equal;
            Outcome::checked(
                json!({"sym": AlgebraDocument::of(&a), "cohomology": cohomology_rows(&v), "kunneth": report}),
                passed,
            )
        }
    }
}

fn cartan(a: &DgAlgebra, pairs: usize, rng: &mut random::SampleRng) -> Result<Outcome> {
    let f = omega(a)?;
    let base = a.table();
    let mut summary: BTreeMap<String, (usize, Option<Witness>)> = BTreeMap::new();
    let mut order = Vec::new();
    for _ in 0..pairs {
        let pick = |rng: &mut random::SampleRng| {
            let parity = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
            let weight = rng.gen_range(-1..=1);
            random::derivation(rng, base, (weight, parity), 2)
        };
        let d1 = pick(rng);
        let d2 = pick(rng);
        let samples: Vec<Element> = (0..3).map(|_| random::element(rng, f.table(), 3, 4)).collect();
        let report = cartan_relations_check(&f, &d1, &d2, &samples)?;
        for r in report.relations {
            if !summary.contains_key(&r.relation) {
                order.push(r.relation.clone());
            }
            let entry = summary.entry(r.relation).or_insert((0, None));
            if r.passed {
                entry.0 += 1;
            } else if entry.1.is_none() {
                entry.1 = r.witness;
            }
        }
    }
    let relations: Vec<Value> = order
        .iter()
        .map(|name| {
            let (ok, w) = &summary[name];
            json!({"relation": name, "pairs": pairs, "passed": ok, "witness": w})
        })
        .collect();
    let passed = summary.values().all(|(ok, _)| *ok == pairs);
    Outcome::checked(json!({"relations": relations}), passed)
}

fn simplex_forms(args: &SimplexArgs) -> Result<SimplexForms> {
    let b = match &args.algebra {
        Some(p) => load_algebra(p)?,
        None => DgAlgebra::ground(),
    };
    SimplexForms::new(args.n, &b)
}

struct Printer<'a> {
    forms: &'a SimplexForms,
    barycentric: bool,
}

impl Printer<'_> {
    fn show(&self, e: &Element) -> Result<String> {
        Ok(if self.barycentric { self.forms.to_barycentric(e)?.to_string() } else { e.to_string() })
    }

    fn read(&self, text: &str) -> Result<Element> {
        if self.barycentric {
            self.forms.eliminate(&parse(text, &self.forms.barycentric_table()?)?)
        } else {
            parse(text, self.forms.table())
        }
    }
}

fn parse_tuple(text: &str) -> Result<Vec<usize>> {
    text.split(',').map(|s| s.trim().parse().map_err(|_| Error::InvalidIndices(text.to_string()))).collect()
}

fn simplicial(action: &SimplicialCommand, barycentric: bool) -> Result<Outcome> {
    match action {
        SimplicialCommand::Faces { simplex, form } => {
            let f = simplex_forms(simplex)?;
            let pr = Printer { forms: &f, barycentric };
            let n = f.dim();
            if n == 0 {
                return Err(Error::InvalidInput("Δ[0] has no faces".into()));
            }
            let face = f.with_dim(n - 1);
            let fp = Printer { forms: &face, barycentric };
            let w = form.as_deref().map(|s| pr.read(s)).transpose()?;
            let mut rows = Vec::new();
            for i in 0..=n {
                let delta = SimplexMap::coface(n, i)?;
                let image = match &w {
                    Some(w) => Some(fp.show(&f.cosimplicial_map(&delta, &face)?.apply(w)?)?),
                    None => None,
                };
                rows.push(json!({"face": i, "vertices": delta.values(), "pullback": image}));
            }
            Outcome::ok(json!({"n": n, "form": w.map(|w| pr.show(&w)).transpose()?, "faces": rows}))
        }
        SimplicialCommand::Whitney { simplex, tuple } => {
            let f = simplex_forms(simplex)?;
            let pr = Printer { forms: &f, barycentric };
            let n = f.dim();
            let tuples = match tuple {
                Some(t) => vec![parse_tuple(t)?],
                None => (0..=n).flat_map(|k| increasing_tuples(n, k)).collect(),
            };
            let mut rows = Vec::new();
            let mut passed = true;
            for t in &tuples {
                let w = f.whitney_form(t)?;
                let dw = f.d(&w)?;
                let mut expected = Element::zero(f.table());
                for i in 0..=n {
                    let mut ext = vec![i];
                    ext.extend(t);
                    if let Some((negative, sorted)) = normalize_tuple(&ext) {
                        let term = f.whitney_form(&sorted)?;
                        expected = if negative { &expected - &term } else { &expected + &term };
                    }
                }
                let ok = dw == expected;
                passed &= ok;
                rows.push(json!({
                    "tuple": tuple_label(t),
                    "form": pr.show(&w)?,
                    "d": pr.show(&dw)?,
                    "coboundary_formula": ok,
                }));
            }
            Outcome::checked(json!({"n": n, "whitney": rows}), passed)
        }
        SimplicialCommand::Project { simplex, form } => {
            let f = simplex_forms(simplex)?;
            let pr = Printer { forms: &f, barycentric };
            let w = pr.read(form)?;
            let p = f.whitney_projection(&w)?;
            let mut coefficients = Vec::new();
            for k in 0..=f.dim() {
                for t in increasing_tuples(f.dim(), k) {
                    let c = f.simplex_integral(&t, &w, IntegralMode::Lenient)?;
                    if !c.is_zero() {
                        coefficients.push(json!({"tuple": tuple_label(&t), "integral": c.to_string()}));
                    }
                }
            }
            let idempotent = f.whitney_projection(&p)? == p;
            Outcome::checked(
                json!({"form": pr.show(&w)?, "projection": pr.show(&p)?, "integrals": coefficients, "idempotent": idempotent}),
                idempotent,
            )
        }
        SimplicialCommand::Dupont { simplex, form } => {
            let f = simplex_forms(simplex)?;
            let pr = Printer { forms: &f, barycentric };
            let w = pr.read(form)?;
            let s = DupontOperator::new(&f)?;
            let sw = s.apply(&w)?;
            let p = f.whitney_projection(&w)?;
            let lhs = &f.d(&sw)? + &s.apply(&f.d(&w)?)?;
            let rhs = &w - &p;
            let homotopy = lhs == rhs;
            let ssw = s.apply(&sw)?;
            let square = ssw.is_zero();
            Outcome::checked(
                json!({
                    "form": pr.show(&w)?,
                    "s": pr.show(&sw)?,
                    "projection": pr.show(&p)?,
                    "ds_plus_sd": pr.show(&lhs)?,
                    "id_minus_p": pr.show(&rhs)?,
                    "homotopy_identity": homotopy,
                    "s_squared_zero": square,
                }),
                homotopy && square,
            )
        }
        SimplicialCommand::Duality { simplex } => {
            let f = simplex_forms(simplex)?;
            let n = f.dim();
            let tuples: Vec<Vec<usize>> = (0..=n).flat_map(|k| increasing_tuples(n, k)).collect();
            let mut matrix = Vec::new();
            let mut passed = true;
            for j in &tuples {
                let mut row = Vec::new();
                for i in &tuples {
                    let v = if i.len() == j.len() {
                        f.simplex_integral(j, &f.whitney_form(i)?, IntegralMode::Strict)?
                    } else {
                        Element::zero(f.coefficients().table())
                    };
                    let expected = if i == j { Element::one(v.table()) } else { Element::zero(v.table()) };
                    passed &= v == expected;
                    row.push(v.to_string());
                }
                matrix.push(row);
            }
            let labels: Vec<String> = tuples.iter().map(|t| tuple_label(t)).collect();
            Outcome::checked(json!({"n": n, "tuples": labels, "integrals": matrix, "kronecker": passed}), passed)
        }
    }
}

#[derive(Deserialize)]
struct SquareDocument {
    i: ChainMap,
    p: ChainMap,
    top: ChainMap,
    bottom: ChainMap,
}

fn cohomology_rows(c: &Complex) -> Vec<Value> {
    c.cohomology().into_iter().map(|((w, p), d)| json!({"weight": w, "parity": p, "dim": d})).collect()
}

fn complex(action: &ComplexCommand, rng: &mut random::SampleRng) -> Result<Outcome> {
    match action {
        ComplexCommand::Cohomology { input } => {
            let c: Complex = load_json(input, "complex")?;
            Outcome::ok(
                json!({"flavor": c.flavor(), "total_dim": c.total_dim(), "cohomology": cohomology_rows(&c), "acyclic": c.is_acyclic()}),
            )
        }
        ComplexCommand::Classify { input } => {
            let f: ChainMap = load_json(input, "chain map")?;
            Outcome::ok(json!({
                "fibration": f.is_fibration(),
                "weak_equivalence": f.is_weak_equivalence(),
                "source_cohomology": cohomology_rows(f.source()),
                "target_cohomology": cohomology_rows(f.target()),
            }))
        }
        ComplexCommand::Lift { input } => {
            let sq: SquareDocument = load_json(input, "lifting square")?;
            match solve_lift(&sq.i, &sq.p, &sq.top, &sq.bottom)? {
                Lift::Found(h) => Outcome::ok(json!({"exists": true, "lift": h})),
                Lift::None(cert) => Outcome::ok(json!({"exists": false, "certificate": cert})),
            }
        }
        ComplexCommand::Factorize { input, mode, panel } => {
            let f: ChainMap = load_json(input, "chain map")?;
            let mode = match mode {
                ModeArg::Cof => FactorizationMode::CofThenAcyclicFib,
                ModeArg::AcyclicCof => FactorizationMode::AcyclicCofThenFib,
            };
            let fac = factorize(&f, mode)?;
            let check = fac.check(&f, rng, *panel)?;
            let passed = check.passed(mode);
            let attached: Vec<Value> =
                fac.attached.iter().map(|(&(w, p), n)| json!({"weight": w, "parity": p, "cells": n})).collect();
            Outcome::checked(
                json!({
                    "mode": mode,
                    "middle": fac.middle,
                    "left": fac.left,
                    "right": fac.right,
                    "attached": attached,
                    "rounds": fac.rounds,
                    "check": check,
                }),
                passed,
            )
        }
    }
}

#[derive(Serialize)]
struct CellRow {
    cell: String,
    disk: Complex,
    sphere: Complex,
    disk_cohomology: Vec<Value>,
    sphere_cohomology: Vec<Value>,
    disk_acyclic: bool,
    sphere_is_own_cohomology: bool,
}

fn cells(flavor: CellFlavor, range: i64, algebra: bool, window: crate::dg::Window, cap: u32) -> Result<Outcome> {
    let mut list = Vec::new();
    if flavor != CellFlavor::Graded {
        list.extend(ungraded_cells());
    }
    if flavor != CellFlavor::Ungraded {
        list.extend(graded_cells(-range, range));
    }
    let mut passed = true;
    let mut rows = Vec::new();
    for c in &list {
        let row = CellRow {
            cell: c.kind.label(),
            disk_cohomology: cohomology_rows(&c.disk),
            sphere_cohomology: cohomology_rows(&c.sphere),
            disk_acyclic: c.disk.is_acyclic(),
            sphere_is_own_cohomology: c.sphere.cohomology() == *c.sphere.dims(),
            disk: c.disk.clone(),
            sphere: c.sphere.clone(),
        };
        passed &= row.disk_acyclic && row.sphere_is_own_cohomology;
        rows.push(row);
    }
    let mut algebra_rows = Vec::new();
    if algebra {
        for c in &list {
            let report = algebra_cell(c.kind)?.report(window, cap)?;
            passed &= report.disk_acyclic && report.inclusion_injective;
            algebra_rows.push(report);
        }
    }
    let kinds: Vec<CellKind> = list.iter().map(|c| c.kind).collect();
    Outcome::checked(
        json!({"kinds": kinds, "cells": rows, "algebra_cells": if algebra { model_value(&algebra_rows)? } else { Value::Null }}),
        passed,
    )
}

fn model_value(v: &[model::AlgebraCellReport]) -> Result<Value> {
    super::to_value(v)
}
