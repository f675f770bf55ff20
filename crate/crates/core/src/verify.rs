//! The full claim checklist run by the `jord` verifier.
//!
//! Every claim is evaluated independently (in parallel when a thread pool is
//! available) and reported in a fixed order, so the report depends only on
//! the configuration.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::SuperAlgebra;
use crate::catalog::{
    k10_v_gram, make_bilinear_jordan, make_dt, make_k10_table, make_k10_tensor, make_k3,
    make_matrix_algebra, make_plus, make_superform_algebra, SuperForm,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::identities::{check_envelope_jordan, check_super_jordan, check_supercommutativity, IdentityReport};
use crate::linear::{frac, int, Matrix, Scalar};
use crate::morphism::{
    table_tensor_iso, factor_orthogonal, grading_automorphism, lift_orthogonal_to_aut, phi,
    psi, psi_tilde, swap_automorphism, wreath_compose, OrthogonalMap, WreathElement,
};
use crate::subalgebra::{
    conjugation_witness, is_subalgebra, maximal_subalgebra, maximality_probe, span_closure,
    structure_report, swap_fixed_subalgebra_table, DtInvariant, GradedSubspace, MaximalKind,
    ProbeVerdict,
};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub probe_trials: usize,
    pub envelope_trials: usize,
    pub envelope_degree: usize,
    pub random_elements: usize,
    /// Directory of shipped fixtures to load and compare, if any.
    pub fixtures: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            probe_trials: 200,
            envelope_trials: 200,
            envelope_degree: 3,
            random_elements: 20,
            fixtures: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// The computation succeeded but disagrees with the stated value.
    Deviation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Deviation => "DEVIATION",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: usize,
    pub criterion: usize,
    pub statement: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub claims: Vec<Claim>,
}

impl VerifyReport {
    pub fn has_failures(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn deviations(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| c.status == Status::Deviation).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "claims (seed {})", self.seed);
        let _ = writeln!(out, "{:>3}  {:>4}  {:<9}  claim", "#", "crit", "status");
        for c in &self.claims {
            let _ = writeln!(out, "{:>3}  {:>4}  {:<9}  {}", c.id, c.criterion, c.status.as_str(), c.statement);
            for line in c.detail.lines() {
                let _ = writeln!(out, "{:>22}{}", "", line);
            }
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} deviation",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Deviation)
        );
        let devs = self.deviations();
        if !devs.is_empty() {
            let _ = writeln!(out, "deviations:");
            for c in devs {
                let _ = writeln!(out, "  {}: {}", c.id, c.detail.replace('\n', "; "));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

type Outcome = Result<(Status, String)>;

struct ClaimDef {
    criterion: usize,
    statement: &'static str,
    run: fn(&Ctx) -> Outcome,
}

struct Ctx {
    cfg: VerifyConfig,
    k10: SuperAlgebra,
    broken: SuperAlgebra,
}

impl Ctx {
    /// Independent RNG stream per claim, derived from the configured seed.
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);
        rng
    }
}

fn pass(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, detail.into()))
}

fn fail(detail: impl Into<String>) -> Outcome {
    Ok((Status::Fail, detail.into()))
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn summarize(r: &IdentityReport) -> String {
    format!("{}: {} evaluated, {} defect(s)", r.identity, r.evaluated, r.witnesses.len())
}

fn axioms(a: &SuperAlgebra) -> Result<(bool, String)> {
    let grading = a.check_grading();
    let comm = check_supercommutativity(a)?;
    let jordan = check_super_jordan(a)?;
    let ok = grading.passed() && comm.passed() && jordan.passed();
    let detail = format!(
        "{}: grading {} violation(s); {}; {}",
        a.name(),
        grading.violations.len(),
        summarize(&comm),
        summarize(&jordan)
    );
    Ok((ok, detail))
}

const CLAIMS: &[ClaimDef] = &[
    ClaimDef { criterion: 1, statement: "K10 table is graded, supercommutative and satisfies the super-Jordan identity", run: k10_axioms },
    ClaimDef { criterion: 2, statement: "F1 + (K3 (x) K3) satisfies the same axioms and 1 is its unit", run: tensor_axioms },
    ClaimDef { criterion: 3, statement: "the table-to-tensor map is an isomorphism", run: table_tensor_map },
    ClaimDef { criterion: 4, statement: "catalog algebras satisfy their identities", run: catalog_axioms },
    ClaimDef { criterion: 5, statement: "the Grassmann envelope of K10 is a Jordan algebra", run: envelope },
    ClaimDef { criterion: 5, statement: "the table with the f-term of p1p2 and p2p1 negated fails both checks", run: broken_table },
    ClaimDef { criterion: 6, statement: "Psi o Phi = Psi~ on random wreath elements", run: psi_phi },
    ClaimDef { criterion: 6, statement: "Phi is multiplicative and d Phi(f,g) d = Phi(g,f)", run: phi_hom },
    ClaimDef { criterion: 6, statement: "kernels: Phi(-id,-id) = tau, Psi~(-id,-id) = id, Psi(tau) = id", run: kernels },
    ClaimDef { criterion: 7, statement: "Psi~(w) factors back to w up to sign and lifts to Aut", run: factorization },
    ClaimDef { criterion: 8, statement: "the four maximal subalgebras: dimensions, closure, unit, maximality probe", run: maximal },
    ClaimDef { criterion: 8, statement: "span{e,f,c1,p1,q1} is not maximal and extends to subalgebra (iv)", run: non_maximal },
    ClaimDef { criterion: 9, statement: "(i) even part is the King decomposition F + J", run: structure_i },
    ClaimDef { criterion: 9, statement: "(ii) B = F(2e-a) + D_t with t = -6", run: structure_ii },
    ClaimDef { criterion: 9, statement: "(iii) radical <c1, a+b, p1+q1> with B/R = D_-3", run: structure_iii },
    ClaimDef { criterion: 9, statement: "(iv) radical <c1, p1, q1> with B/R = F + J(form)", run: structure_iv },
    ClaimDef { criterion: 10, statement: "(iii) corresponds to F1 + ((Fe + Fx) (x) K3)", run: tensor_form_iii },
    ClaimDef { criterion: 10, statement: "(iv) corresponds to F1 + F(e(x)e) + x(x)K3 + K3(x)y", run: tensor_form_iv },
    ClaimDef { criterion: 10, statement: "fixed points of the swap are span{e, f, c1+c2, p1-q2, p2-q1}", run: swap_fixed },
    ClaimDef { criterion: 10, statement: "(ii) is conjugate to the fixed subalgebra of the swap", run: tensor_form_ii },
];

fn k10_axioms(ctx: &Ctx) -> Outcome {
    let (ok, detail) = axioms(&ctx.k10)?;
    check(ok, detail)
}

fn tensor_axioms(_: &Ctx) -> Outcome {
    let t = make_k10_tensor();
    let (ok, detail) = axioms(&t)?;
    let one = t.elem("1");
    let unit = (0..t.dim()).all(|i| {
        let b = t.basis(i);
        t.mul(&one, &b) == b && t.mul(&b, &one) == b
    });
    check(ok && unit, format!("{detail}; unit {}", if unit { "verified" } else { "FAILED" }))
}

fn table_tensor_map(_: &Ctx) -> Outcome {
    let iso = table_tensor_iso()?;
    let hom = iso.is_homomorphism();
    let det = iso.matrix().det()?;
    check(
        hom.passed() && iso.matrix().invert().is_ok(),
        format!("{}; det = {}", summarize(&hom), crate::linear::format_scalar(&det)),
    )
}

fn catalog_axioms(_: &Ctx) -> Outcome {
    let mut algebras = vec![make_k3()];
    for t in [int(-3), int(-6), int(1), int(2), frac(-3, 2)] {
        algebras.push(make_dt(&t)?);
    }
    let form = SuperForm::new(Matrix::identity(2), Matrix::from_i64(&[&[0, 1], &[-1, 0]]))?;
    algebras.push(make_superform_algebra(&form));
    algebras.push(make_bilinear_jordan(&k10_v_gram())?);
    algebras.push(make_plus(&make_matrix_algebra(2))?);
    let mut ok = true;
    let mut lines = Vec::new();
    for a in &algebras {
        let (good, detail) = axioms(a)?;
        ok &= good;
        lines.push(detail);
    }
    check(ok, lines.join("\n"))
}

fn envelope(ctx: &Ctx) -> Outcome {
    let r = check_envelope_jordan(&ctx.k10, ctx.cfg.envelope_degree, ctx.cfg.envelope_trials, ctx.cfg.seed)?;
    check(r.passed(), format!("{} ({})", summarize(&r), r.notes.join("; ")))
}

fn broken_table(ctx: &Ctx) -> Outcome {
    let a = &ctx.broken;
    let jordan = check_super_jordan(a)?;
    let env = check_envelope_jordan(a, ctx.cfg.envelope_degree, ctx.cfg.envelope_trials, ctx.cfg.seed)?;
    let first = jordan
        .witnesses
        .first()
        .map(|w| {
            let names: Vec<&str> = w.indices.iter().map(|&i| a.labels()[i].as_str()).collect();
            format!("first super-Jordan witness ({})", names.join(", "))
        })
        .unwrap_or_default();
    check(
        !jordan.passed() && !env.passed(),
        format!("{}; {}; {first}", summarize(&jordan), summarize(&env)),
    )
}

fn random_wreaths(ctx: &Ctx, stream: u64, n: usize) -> Vec<WreathElement> {
    let mut rng = ctx.rng(stream);
    (0..n).map(|_| WreathElement::random(&mut rng, 5)).collect()
}

fn psi_phi(ctx: &Ctx) -> Outcome {
    let ws = random_wreaths(ctx, 1, ctx.cfg.random_elements);
    let mut bad = 0;
    for w in &ws {
        if psi(&phi(w))? != psi_tilde(w) {
            bad += 1;
        }
    }
    check(bad == 0, format!("{} elements, {bad} mismatch(es)", ws.len()))
}

fn phi_hom(ctx: &Ctx) -> Outcome {
    let ws = random_wreaths(ctx, 2, 2 * ctx.cfg.random_elements);
    let delta = swap_automorphism()?;
    let (mut hom_bad, mut conj_bad) = (0, 0);
    for pair in ws.chunks(2) {
        let (w1, w2) = (&pair[0], &pair[1]);
        if phi(&wreath_compose(w1, w2)) != phi(w1).compose(&phi(w2))? {
            hom_bad += 1;
        }
        let fg = WreathElement::new(w1.f().clone(), w1.g().clone(), false)?;
        let gf = WreathElement::new(w1.g().clone(), w1.f().clone(), false)?;
        if delta.compose(&phi(&fg))?.compose(&delta)? != phi(&gf) {
            conj_bad += 1;
        }
    }
    check(
        hom_bad + conj_bad == 0,
        format!("{} pairs: {hom_bad} homomorphism mismatch(es), {conj_bad} conjugation mismatch(es)", ws.len() / 2),
    )
}

fn kernels(_: &Ctx) -> Outcome {
    let tensor = Arc::new(make_k10_tensor());
    let tau = grading_automorphism(tensor);
    let m = WreathElement::minus_identity();
    let a = phi(&m) == tau;
    let b = psi_tilde(&m) == OrthogonalMap::identity();
    let c = psi(&tau)? == OrthogonalMap::identity();
    check(a && b && c, format!("Phi(-id,-id) = tau: {a}; Psi~(-id,-id) = id: {b}; Psi(tau) = id: {c}"))
}

fn factorization(ctx: &Ctx) -> Outcome {
    let ws = random_wreaths(ctx, 3, ctx.cfg.random_elements);
    let (mut factor_bad, mut lift_bad) = (0, 0);
    for w in &ws {
        let m = psi_tilde(w);
        if !factor_orthogonal(&m)?.eq_up_to_sign(w) {
            factor_bad += 1;
        }
        if psi(&lift_orthogonal_to_aut(&m)?)? != m {
            lift_bad += 1;
        }
    }
    check(
        factor_bad + lift_bad == 0,
        format!("{} elements: {factor_bad} factorization mismatch(es), {lift_bad} lift mismatch(es)", ws.len()),
    )
}

fn maximal(ctx: &Ctx) -> Outcome {
    let k10 = &ctx.k10;
    let unit = k10.parse_element("e + f")?;
    let mut ok = true;
    let mut lines = Vec::new();
    for (i, kind) in MaximalKind::ALL.into_iter().enumerate() {
        let b = maximal_subalgebra(kind)?;
        let verdict = maximality_probe(k10, &b, ctx.cfg.probe_trials, ctx.cfg.seed.wrapping_add(i as u64))?;
        let good = b.dims() == kind.expected_dims()
            && is_subalgebra(k10, &b)
            && b.dim() < k10.dim()
            && b.contains(k10, &unit)?
            && verdict.is_probably_maximal();
        ok &= good;
        let probe = match verdict {
            ProbeVerdict::ProbablyMaximal { candidates } => format!("probably maximal ({candidates} adjunctions)"),
            ProbeVerdict::NotMaximal { witness, .. } => format!("NOT maximal, witness {}", k10.format_element(&witness)),
        };
        lines.push(format!("({kind}) dims {:?}: {probe}", b.dims()));
    }
    check(ok, lines.join("\n"))
}

fn non_maximal(ctx: &Ctx) -> Outcome {
    let k10 = &ctx.k10;
    let gens: Vec<_> = ["e", "f", "c1", "p1", "q1"].iter().map(|l| k10.elem(l)).collect();
    let b = span_closure(k10, &gens)?;
    let iv = maximal_subalgebra(MaximalKind::IV)?;
    match maximality_probe(k10, &b, ctx.cfg.probe_trials, ctx.cfg.seed)? {
        ProbeVerdict::NotMaximal { witness, closure, extension } => check(
            b.dims() == (3, 2) && iv.contains_subspace(&closure)? && closure != b && extension == iv,
            format!(
                "witness {}; closure {}; extension {}",
                k10.format_element(&witness),
                closure.describe(k10),
                extension.describe(k10)
            ),
        ),
        ProbeVerdict::ProbablyMaximal { .. } => fail("probe did not refute maximality"),
    }
}

fn structure_i(_: &Ctx) -> Outcome {
    let r = structure_report(MaximalKind::I)?;
    pass(r.facts.iter().map(|f| format!("{}: {}", f.claim, f.detail)).collect::<Vec<_>>().join("\n"))
}

fn structure_ii(_: &Ctx) -> Outcome {
    let r = structure_report(MaximalKind::II)?;
    let facts = r.facts.iter().map(|f| format!("{}: {}", f.claim, f.detail)).collect::<Vec<_>>().join("\n");
    let dt = r.dt.ok_or_else(|| Error::Verification("no dt parameter computed".into()))?;
    let stated = int(-6);
    match &dt {
        DtInvariant::Pair(..) if dt.contains(&stated) => pass(facts),
        DtInvariant::Pair(..) => Ok((
            Status::Deviation,
            format!(
                "{facts}\nstated t = -6, pair {}; computed {dt} from p1*p2 = 4*(2e+a)/4 - 6*f",
                DtInvariant::from_t(stated.clone())
            ),
        )),
        DtInvariant::Degenerate => fail(format!("{facts}\ncomplement is degenerate")),
    }
}

fn structure_iii(_: &Ctx) -> Outcome {
    let r = structure_report(MaximalKind::III)?;
    let dt = r.dt.clone().ok_or_else(|| Error::Verification("no dt parameter computed".into()))?;
    let facts = r.facts.iter().map(|f| format!("{}: {}", f.claim, f.detail)).collect::<Vec<_>>().join("\n");
    check(dt == DtInvariant::Pair(int(-3), frac(-1, 3)), facts)
}

fn structure_iv(_: &Ctx) -> Outcome {
    let r = structure_report(MaximalKind::IV)?;
    pass(r.facts.iter().map(|f| format!("{}: {}", f.claim, f.detail)).collect::<Vec<_>>().join("\n"))
}

fn image_claim(kind: MaximalKind, expected: &[&str]) -> Outcome {
    let iso = table_tensor_iso()?;
    let tensor = iso.target().clone();
    let image = maximal_subalgebra(kind)?.image(&iso)?;
    let elems = expected.iter().map(|s| tensor.parse_element(s)).collect::<Result<Vec<_>>>()?;
    let target = GradedSubspace::spanned(&tensor, &elems)?;
    let witness = conjugation_witness(kind)?;
    check(
        image == target && witness.tensor_target == target,
        format!("image {}", image.describe(&tensor)),
    )
}

fn tensor_form_iii(_: &Ctx) -> Outcome {
    image_claim(MaximalKind::III, &["1", "e⊗e", "x⊗x", "x⊗y", "e⊗x", "x⊗e", "e⊗y"])
}

fn tensor_form_iv(_: &Ctx) -> Outcome {
    image_claim(MaximalKind::IV, &["1", "e⊗e", "x⊗e", "x⊗x", "x⊗y", "y⊗y", "e⊗y"])
}

fn swap_fixed(ctx: &Ctx) -> Outcome {
    let k10 = &ctx.k10;
    let fixed = swap_fixed_subalgebra_table()?;
    let elems = ["e", "f", "c1+c2", "p1-q2", "p2-q1"]
        .iter()
        .map(|s| k10.parse_element(s))
        .collect::<Result<Vec<_>>>()?;
    let expected = GradedSubspace::spanned(k10, &elems)?;
    check(fixed == expected, fixed.describe(k10))
}

fn tensor_form_ii(ctx: &Ctx) -> Outcome {
    let k10 = &ctx.k10;
    let w = conjugation_witness(MaximalKind::II)?;
    let image = maximal_subalgebra(MaximalKind::II)?.image(&w.automorphism)?;
    let fixed = swap_fixed_subalgebra_table()?;
    // (-1)-eigenspace of z ↦ (c1+c2)z on the odd part.
    let c = k10.parse_element("c1 + c2")?;
    let odd: Vec<_> = (6..10).map(|i| k10.basis(i)).collect();
    let cols: Vec<Vec<Scalar>> = odd.iter().map(|z| (&k10.mul(&c, z) + z).coords()[6..].to_vec()).collect();
    let m = Matrix::from_columns(4, &cols)?;
    let eigen: Vec<_> = m
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut full = vec![int(0); 6];
            full.extend(v);
            crate::algebra::Element::from_coords(full)
        })
        .collect();
    let eigen = GradedSubspace::spanned(k10, &eigen)?;
    let odd_image = image.intersect(&GradedSubspace::odd_part(k10))?;
    check(
        image == fixed && odd_image == eigen,
        format!(
            "automorphism from a Witt map a -> -(c1+c2), {} reflection(s) fixing a added for a rational lift\nimage {}",
            w.adjustments,
            image.describe(k10)
        ),
    )
}

fn fixtures_claim(dir: &std::path::Path) -> Outcome {
    let stale = fixtures::stale(dir)?;
    check(stale.is_empty(), if stale.is_empty() {
        format!("{} files match", fixtures::generate()?.len())
    } else {
        format!("stale: {}", stale.join(", "))
    })
}

/// Runs every claim. Only I/O and parse errors on fixtures are returned as
/// errors; everything else becomes a FAIL row.
pub fn verify_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let (k10, broken) = match &cfg.fixtures {
        Some(dir) => (
            SuperAlgebra::from_json(&fixtures::read(&dir.join("k10.json"))?)?,
            SuperAlgebra::from_json(&fixtures::read(&dir.join("broken.json"))?)?,
        ),
        None => (make_k10_table(), fixtures::make_broken_k10()),
    };
    if let Some(dir) = &cfg.fixtures {
        // Surface missing files as errors before any claim runs.
        for (name, _) in fixtures::generate()? {
            fixtures::read(&dir.join(name))?;
        }
    }
    let ctx = Ctx { cfg: cfg.clone(), k10, broken };
    let mut claims: Vec<Claim> = CLAIMS
        .par_iter()
        .enumerate()
        .map(|(i, def)| {
            let (status, detail) = (def.run)(&ctx).unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
            Claim { id: i + 1, criterion: def.criterion, statement: def.statement.to_string(), status, detail }
        })
        .collect();
    if let Some(dir) = &cfg.fixtures {
        let (status, detail) = fixtures_claim(dir).unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
        claims.push(Claim {
            id: claims.len() + 1,
            criterion: 0,
            statement: "shipped fixtures match the built-in constructions".into(),
            status,
            detail,
        });
    }
    Ok(VerifyReport { seed: cfg.seed, claims })
}
