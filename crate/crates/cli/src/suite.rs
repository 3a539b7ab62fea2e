//! The traceability suite: one randomized check per traced result, each
//! reported as pass, fail or skipped with the number of cases and up to
//! [`MAX_WITNESSES`] failing cases.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use typei_core::algebra::{
    abelian_annihilator_test, central_cover, dimension, equivalent, is_abelian,
    minimal_central_projections, vector_norm, NormValue,
};
use typei_core::automorphism::{
    compose, evaluate_word, make_central, make_inner, revalidate,
};
use typei_core::decompose::{canonicalize, classify_band_preserving, decompose};
use typei_core::random::*;
use typei_core::scalar::{rational, rational_to_f64};
use typei_core::topology::{
    equality_test_with, inclusion_test_with, o_membership_with, sample_element, v_membership_with,
};
use typei_core::{
    AlgebraElement, AlgebraSpec, CentralAutomorphism, Classification, Error, GaussianRational,
    NeighborhoodSpec, ProjectionElement, QMatrix, Status,
};

use crate::json;

pub const MAX_WITNESSES: usize = 5;

/// Every traced id, in report order.
pub const TRACE_IDS: [&str; 15] = [
    "norm-axioms",
    "dimension-axioms",
    "topology-inclusion",
    "topology-equality",
    "topologies-coincide",
    "abelian-witness",
    "center-fixing-inner",
    "central-transport-homomorphism",
    "moved-center-obstruction",
    "factorization-uniqueness",
    "cover-preservation",
    "degree-preservation",
    "factorization",
    "band-preserving-inner",
    "norm-lower-bound",
];

/// Deliberate defects for exercising the harness itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Report every norm at half its value.
    pub norm: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: u64,
    pub max_degree: usize,
    pub max_atoms: usize,
    pub eta: f64,
    pub skip: Vec<String>,
    pub faults: Faults,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 20,
            max_degree: 3,
            max_atoms: 3,
            eta: typei_core::topology::DEFAULT_ETA,
            skip: Vec::new(),
            faults: Faults::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStatus {
    Pass,
    Fail,
    Skipped,
}

impl TraceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceStatus::Pass => "pass",
            TraceStatus::Fail => "fail",
            TraceStatus::Skipped => "skipped",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(TraceStatus::Pass),
            "fail" => Some(TraceStatus::Fail),
            "skipped" => Some(TraceStatus::Skipped),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub status: TraceStatus,
    pub cases: u64,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub seed: u64,
    pub samples: u64,
    pub entries: BTreeMap<String, TraceEntry>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.entries.values().all(|e| e.status != TraceStatus::Fail)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, e)| e.status == TraceStatus::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|(id, e)| {
                (
                    id.clone(),
                    json!({"status": e.status.as_str(), "cases": e.cases, "witnesses": e.witnesses}),
                )
            })
            .collect();
        json::document(
            "trace_report",
            vec![
                ("seed", json!(self.seed)),
                ("samples", json!(self.samples)),
                ("entries", Value::Object(entries)),
            ],
        )
    }

    pub fn from_json(doc: &Value) -> typei_core::Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let seed = json::document_field(doc, "seed")?.as_u64().ok_or_else(|| bad("seed"))?;
        let samples = json::document_field(doc, "samples")?.as_u64().ok_or_else(|| bad("samples"))?;
        let entries = json::document_field(doc, "entries")?
            .as_object()
            .ok_or_else(|| bad("entries"))?
            .iter()
            .map(|(id, e)| {
                let status = e
                    .get("status")
                    .and_then(Value::as_str)
                    .and_then(TraceStatus::parse)
                    .ok_or_else(|| bad("entry status"))?;
                let cases = e.get("cases").and_then(Value::as_u64).ok_or_else(|| bad("entry cases"))?;
                let witnesses = e
                    .get("witnesses")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("entry witnesses"))?
                    .iter()
                    .map(|w| w.as_str().map(str::to_string).ok_or_else(|| bad("witness")))
                    .collect::<typei_core::Result<Vec<_>>>()?;
                Ok((id.clone(), TraceEntry { status, cases, witnesses }))
            })
            .collect::<typei_core::Result<BTreeMap<_, _>>>()?;
        Ok(Self { seed, samples, entries })
    }

    /// One line per id.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (id, e) in &self.entries {
            out.push_str(&format!("{:<32} {:<8} {:>6} cases\n", id, e.status.as_str(), e.cases));
            for w in &e.witnesses {
                out.push_str(&format!("    {w}\n"));
            }
        }
        let failed = self.failed_ids().len();
        out.push_str(&format!(
            "{} of {} checks failed (seed {}, {} samples)\n",
            failed,
            self.entries.len(),
            self.seed,
            self.samples
        ));
        out
    }
}

/// Random spec with 1 to 3 blocks of degree at most `max_degree`.
pub fn config_spec(rng: &mut ChaCha8Rng, max_degree: usize, max_atoms: usize) -> Arc<AlgebraSpec> {
    let blocks = rng.random_range(1..=3);
    let degrees: Vec<usize> = (0..blocks).map(|_| rng.random_range(1..=max_degree)).collect();
    random_spec(rng, "suite", &degrees, max_atoms).expect("generated blocks are valid")
}

type Check = std::result::Result<(), String>;

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    stream: u64,
}

impl Ctx<'_> {
    fn rng(&self, i: u64) -> ChaCha8Rng {
        stream_rng(self.cfg.seed ^ (self.stream << 48), i)
    }

    fn spec(&self, rng: &mut ChaCha8Rng) -> Arc<AlgebraSpec> {
        config_spec(rng, self.cfg.max_degree, self.cfg.max_atoms)
    }

    fn norm(&self, x: &AlgebraElement) -> NormValue {
        let mut n = vector_norm(x);
        if self.cfg.faults.norm {
            n.values.iter_mut().for_each(|v| *v *= 0.5);
        }
        n
    }

    /// Runs `check` on every sample in parallel; failures keep sample order.
    fn run(&self, check: impl Fn(u64, &mut ChaCha8Rng) -> Check + Sync) -> TraceEntry {
        let failures: Vec<String> = (0..self.cfg.samples)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = self.rng(i);
                check(i, &mut rng).err().map(|e| format!("sample {i}: {e}"))
            })
            .collect();
        TraceEntry {
            status: if failures.is_empty() {
                TraceStatus::Pass
            } else {
                TraceStatus::Fail
            },
            cases: self.cfg.samples,
            witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

fn norm_axioms(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let dist = EntryDist::fractions(3, 2).with_zero_slots(0.25);
    let x = random_element(rng, &spec, &dist);
    let y = random_element(rng, &spec, &dist);
    let f = random_central_function(rng, &spec, &dist);
    let nx = ctx.norm(&x).values;
    let ny = ctx.norm(&y).values;
    let nsum = ctx.norm(&(&x + &y)).values;
    let nprod = ctx.norm(&(&x * &y)).values;
    let nfx = ctx.norm(&x.central_mul(&f).map_err(err_str)?).values;
    let nxx = ctx.norm(&(&x * &x.adjoint())).values;
    let tol = 1e-9;
    for s in 0..spec.num_slots() {
        let label = &spec.slot(s).label;
        let absf = rational_to_f64(&f.value(s).norm_sqr()).sqrt();
        ensure(nx[s] >= 0.0 && (nx[s] == 0.0) == x.slot(s).is_zero(), || format!("definiteness at {label}"))?;
        ensure((nfx[s] - absf * nx[s]).abs() <= tol, || format!("homogeneity at {label}"))?;
        ensure(nsum[s] <= nx[s] + ny[s] + tol, || format!("triangle inequality at {label}"))?;
        ensure(nprod[s] <= nx[s] * ny[s] + tol, || format!("submultiplicativity at {label}"))?;
        ensure((nxx[s] - nx[s] * nx[s]).abs() <= tol * (1.0 + nx[s] * nx[s]), || {
            format!("C*-identity at {label}: {} vs {}", nxx[s], nx[s] * nx[s])
        })?;
    }
    Ok(())
}

fn dimension_axioms(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let (p, q) = random_orthogonal_pair(rng, &spec);
    let sum = ProjectionElement::new(p.element() + q.element()).map_err(err_str)?;
    ensure(dimension(&sum) == &dimension(&p) + &dimension(&q), || "additivity".into())?;

    let u = AlgebraElement::from_fn(spec.clone(), |s| {
        let n = spec.slot(s).degree;
        let unitary = random_unitary_matrix(rng, n);
        let keep: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let partial = QMatrix::diag(
            keep.iter()
                .map(|&k| if k { GaussianRational::from_int(1) } else { GaussianRational::from_int(0) })
                .collect(),
        );
        &unitary * &partial
    });
    let uu = ProjectionElement::new(&u * &u.adjoint()).map_err(err_str)?;
    let uu_star = ProjectionElement::new(&u.adjoint() * &u).map_err(err_str)?;
    ensure(dimension(&uu) == dimension(&uu_star), || "d(uu*) != d(u*u)".into())?;
    let iso = equivalent(&uu, &uu_star).map_err(err_str)?;
    ensure(iso.is_some_and(|w| w.verify(&uu, &uu_star)), || "no certified equivalence".into())?;

    let z = random_central_projection(rng, &spec);
    let zel = AlgebraElement::from_central_projection(spec.clone(), &z).map_err(err_str)?;
    let zp = ProjectionElement::new(&zel * p.element()).map_err(err_str)?;
    ensure(dimension(&zp) == &z.as_function() * &dimension(&p), || "d(zp) != z d(p)".into())?;

    let chain = random_chain(rng, &spec, 4);
    let top = dimension(chain.last().expect("nonempty chain"));
    let sup_ok = (0..spec.num_slots()).all(|s| {
        chain.iter().map(|e| dimension(e).value(s).re.clone()).max() == Some(top.value(s).re.clone())
    });
    ensure(sup_ok, || "d(sup) != max d(e_k)".into())?;

    let abelian = random_full_abelian(rng, &spec);
    ensure(dimension(&abelian) == central_cover(abelian.element()).as_function(), || {
        "d(p) != c(p) for a full abelian projection".into()
    })?;
    for e in [&p, &q, &sum, &uu, &zp] {
        let d = dimension(e);
        let c = central_cover(e.element()).as_function();
        ensure((0..spec.num_slots()).all(|s| d.value(s).re >= c.value(s).re), || "d(e) < c(e)".into())?;
    }
    Ok(())
}

fn random_nb(rng: &mut ChaCha8Rng, spec: &AlgebraSpec, eps_choices: &[(i64, i64)]) -> NeighborhoodSpec {
    let (p, q) = eps_choices[rng.random_range(0..eps_choices.len())];
    random_neighborhood(rng, spec, rational(p, q))
}

fn topology_inclusion(ctx: &Ctx) -> TraceEntry {
    let mut rng = ctx.rng(u64::MAX);
    let spec = ctx.spec(&mut rng);
    let eps = [(1, 4), (1, 2), (1, 1), (3, 2), (2, 1)];
    let mut witnesses = Vec::new();
    let mut cases = 0;
    for k in 0..5u64 {
        let nb = random_nb(&mut rng, &spec, &eps);
        match inclusion_test_with(&spec, &nb, ctx.cfg.samples, ctx.cfg.seed.wrapping_add(k), ctx.cfg.eta) {
            Ok(r) => {
                cases += r.samples;
                witnesses.extend(r.hard_failures.iter().map(|h| format!("nb {k} sample {}: O-In but V-Out", h.sample)));
            }
            Err(e) => witnesses.push(e.to_string()),
        }
    }
    entry(cases, witnesses)
}

fn topology_equality(ctx: &Ctx) -> TraceEntry {
    let mut rng = ctx.rng(u64::MAX);
    let spec = ctx.spec(&mut rng);
    let mut witnesses = Vec::new();
    let mut cases = 0;
    for (k, (p, q)) in [(1, 4), (1, 2), (3, 4)].into_iter().enumerate() {
        let nb = random_neighborhood(&mut rng, &spec, rational(p, q));
        match equality_test_with(&spec, &nb, ctx.cfg.samples, ctx.cfg.seed.wrapping_add(k as u64), ctx.cfg.eta) {
            Ok(r) => {
                cases += r.samples;
                witnesses.extend(r.hard_failures.iter().map(|h| {
                    format!("eps {p}/{q} sample {}: O-{:?} V-{:?}", h.sample, h.o_status, h.v_status)
                }));
            }
            Err(e) => witnesses.push(e.to_string()),
        }
    }
    entry(cases, witnesses)
}

fn entry(cases: u64, witnesses: Vec<String>) -> TraceEntry {
    TraceEntry {
        status: if witnesses.is_empty() {
            TraceStatus::Pass
        } else {
            TraceStatus::Fail
        },
        cases,
        witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
    }
}

fn topologies_coincide(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let nb = random_nb(rng, &spec, &[(1, 8), (1, 3), (2, 3), (7, 8)]);
    for _ in 0..10 {
        let x = sample_element(rng, &spec);
        let o = o_membership_with(&x, &nb, ctx.cfg.eta).map_err(err_str)?.status;
        let v = v_membership_with(&x, &nb, ctx.cfg.eta).map_err(err_str)?.status;
        ensure(o == Status::Boundary || v == Status::Boundary || o == v, || {
            format!("O-{o:?} but V-{v:?} for eps {}", nb.eps)
        })?;
    }
    Ok(())
}

fn abelian_witness(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let x = random_nonzero_element(rng, &spec, &EntryDist::integers(2).with_zero_slots(0.4));
    let p = abelian_annihilator_test(&x).ok_or("no witness for a nonzero element")?;
    ensure(is_abelian(&p), || "witness is not abelian".into())?;
    ensure(!(&(p.element() * &(&x.adjoint() * &x)) * p.element()).is_zero(), || "p x*x p = 0".into())?;
    ensure(abelian_annihilator_test(&AlgebraElement::zero(spec)).is_none(), || "witness for zero".into())
}

fn word(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (Arc<AlgebraSpec>, Vec<typei_core::Generator>) {
    let spec = ctx.spec(rng);
    let len = rng.random_range(1..=4);
    let w = random_word(rng, &spec, len, &EntryDist::integers(2));
    (spec, w)
}

fn center_fixing_inner(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let w = random_band_preserving_word(rng, &spec, 3, &EntryDist::integers(2));
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    ensure(t.is_center_fixing(), || "word does not fix the center".into())?;
    let d = decompose(&t).map_err(err_str)?;
    ensure(d.phi.is_identity(), || "nontrivial phi for a center-fixing map".into())?;
    let inner = make_inner(&d.a).map_err(err_str)?;
    ensure(inner == t, || "T != T_a".into())
}

fn central_transport_homomorphism(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let phi = random_central_automorphism(rng, &spec);
    let psi = random_central_automorphism(rng, &spec);
    let lhs = compose(&make_central(&phi), &make_central(&psi)).map_err(err_str)?;
    let rhs = make_central(&phi.compose(&psi).map_err(err_str)?);
    ensure(lhs == rhs, || "T_phi T_psi != T_(phi psi)".into())?;
    let f = random_central_function(rng, &spec, &EntryDist::integers(3));
    let z = AlgebraElement::from_central(spec.clone(), &f).map_err(err_str)?;
    let moved = make_central(&phi).apply(&z).map_err(err_str)?;
    ensure(moved.as_central() == Some(phi.apply_central(&f)), || "T_phi does not extend phi".into())
}

fn moved_center_obstruction(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let (spec, w) = word(ctx, rng);
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    let d = decompose(&t).map_err(err_str)?;
    let mins = minimal_central_projections(&spec);
    if !d.phi.is_identity() {
        let moved = mins.iter().any(|z| t.apply(z).map(|tz| &tz != z).unwrap_or(true));
        ensure(moved, || "phi != id but every minimal central projection is fixed".into())?;
    }
    let a = random_invertible(rng, &spec, &EntryDist::integers(2));
    let ta = make_inner(&a).map_err(err_str)?;
    ensure(mins.iter().all(|z| ta.apply(z).is_ok_and(|tz| &tz == z)), || {
        "inner automorphism moved the center".into()
    })
}

fn factorization_uniqueness(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    let a = random_invertible(rng, &spec, &EntryDist::fractions(3, 2));
    let pi = random_central_automorphism(rng, &spec);
    let t = compose(&make_inner(&a).map_err(err_str)?, &make_central(&pi)).map_err(err_str)?;
    let d = decompose(&t).map_err(err_str)?;
    ensure(d.phi == pi, || "phi differs from pi".into())?;
    ensure(d.a == canonicalize(&a).map_err(err_str)?, || "a differs from canonical(a)".into())
}

fn cover_preservation(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let (spec, w) = word(ctx, rng);
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    let x = random_invertible(rng, &spec, &EntryDist::integers(2));
    ensure(central_cover(&x).is_full(), || "test element lacks full cover".into())?;
    ensure(central_cover(&t.apply(&x).map_err(err_str)?).is_full(), || "c(T(x)) != 1".into())
}

fn degree_preservation(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let (spec, w) = word(ctx, rng);
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    let d = decompose(&t).map_err(err_str)?;
    for s in 0..spec.num_slots() {
        ensure(spec.slot(s).degree == spec.slot(d.phi.image(s)).degree, || {
            format!("{} sent across degrees", spec.slot(s).label)
        })?;
    }
    // a map across degrees is refused
    if let Some((s, t)) = (0..spec.num_slots())
        .flat_map(|s| (0..spec.num_slots()).map(move |t| (s, t)))
        .find(|&(s, t)| spec.slot(s).degree != spec.slot(t).degree)
    {
        let refused = matches!(CentralAutomorphism::swap(spec.clone(), s, t), Err(Error::DegreeMismatch { .. }));
        ensure(refused, || "cross-degree swap accepted".into())?;
    }
    Ok(())
}

fn factorization(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let (spec, w) = word(ctx, rng);
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    ensure(revalidate(&t).is_ok(), || "word does not validate".into())?;
    let d = decompose(&t).map_err(err_str)?;
    ensure(d.phi == net_permutation(&spec, &w), || "phi differs from the word's net permutation".into())?;
    let rebuilt = compose(&make_inner(&d.a).map_err(err_str)?, &make_central(&d.phi)).map_err(err_str)?;
    ensure(rebuilt == t, || "T_a T_phi != T".into())
}

fn band_preserving_inner(ctx: &Ctx, i: u64, rng: &mut ChaCha8Rng) -> Check {
    let spec = ctx.spec(rng);
    if i.is_multiple_of(2) {
        let w = random_band_preserving_word(rng, &spec, 3, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
        match classify_band_preserving(&t).map_err(err_str)? {
            Classification::Inner(wit) => ensure(wit.verify(), || "witness a a^-1 != 1".into()),
            Classification::NotBandPreserving(_) => Err("band-preserving word classified as not".into()),
        }
    } else {
        let Some(phi) = random_nontrivial_central(rng, &spec) else {
            return Ok(());
        };
        let a = random_invertible(rng, &spec, &EntryDist::integers(2));
        let t = compose(&make_inner(&a).map_err(err_str)?, &make_central(&phi)).map_err(err_str)?;
        match classify_band_preserving(&t).map_err(err_str)? {
            Classification::NotBandPreserving(found) => ensure(found == phi, || "wrong obstruction".into()),
            Classification::Inner(_) => Err("moved center classified as inner".into()),
        }
    }
}

fn norm_lower_bound(ctx: &Ctx, _: u64, rng: &mut ChaCha8Rng) -> Check {
    let n = rng.random_range(1..=ctx.cfg.max_degree);
    let spec = random_spec(rng, "hom", &[n], ctx.cfg.max_atoms).map_err(err_str)?;
    let dist = EntryDist::fractions(3, 2);
    let a: Vec<_> = (0..n).map(|_| random_central_function(rng, &spec, &dist)).collect();
    let x = AlgebraElement::from_fn(spec.clone(), |s| QMatrix::diag(a.iter().map(|f| f.value(s).clone()).collect()));
    let w = random_word(rng, &spec, 3, &EntryDist::integers(2));
    let t = evaluate_word(spec.clone(), &w).map_err(err_str)?;
    let ntx = ctx.norm(&t.apply(&x).map_err(err_str)?).values;
    for (k, ak) in a.iter().enumerate() {
        let img = t
            .apply(&AlgebraElement::from_central(spec.clone(), ak).map_err(err_str)?)
            .map_err(err_str)?
            .as_central()
            .ok_or("image of a central element is not central")?;
        for (s, &n) in ntx.iter().enumerate() {
            let bound = rational_to_f64(&img.value(s).norm_sqr()).sqrt();
            ensure(n >= bound - 1e-9, || format!("k = {k}, {}: {n} < {bound}", spec.slot(s).label))?;
        }
    }
    Ok(())
}

pub fn run_suite(cfg: &SuiteConfig) -> TraceReport {
    type Sampled = fn(&Ctx, u64, &mut ChaCha8Rng) -> Check;
    let sampled: [(&str, Sampled); 12] = [
        ("norm-axioms", norm_axioms),
        ("dimension-axioms", dimension_axioms),
        ("topologies-coincide", topologies_coincide),
        ("abelian-witness", abelian_witness),
        ("center-fixing-inner", center_fixing_inner),
        ("central-transport-homomorphism", central_transport_homomorphism),
        ("moved-center-obstruction", moved_center_obstruction),
        ("factorization-uniqueness", factorization_uniqueness),
        ("cover-preservation", cover_preservation),
        ("degree-preservation", degree_preservation),
        ("factorization", factorization),
        ("band-preserving-inner", band_preserving_inner),
    ];
    let mut entries = BTreeMap::new();
    for (k, id) in TRACE_IDS.iter().enumerate() {
        let ctx = Ctx { cfg, stream: k as u64 };
        let e = if cfg.skip.iter().any(|s| s == id) {
            TraceEntry {
                status: TraceStatus::Skipped,
                cases: 0,
                witnesses: vec![],
            }
        } else if *id == "topology-inclusion" {
            topology_inclusion(&ctx)
        } else if *id == "topology-equality" {
            topology_equality(&ctx)
        } else if *id == "norm-lower-bound" {
            ctx.run(|i, rng| norm_lower_bound(&ctx, i, rng))
        } else {
            let f = sampled.iter().find(|(name, _)| name == id).expect("every id has a check").1;
            ctx.run(|i, rng| f(&ctx, i, rng))
        };
        entries.insert(id.to_string(), e);
    }
    TraceReport {
        seed: cfg.seed,
        samples: cfg.samples,
        entries,
    }
}
