//! Decision procedures for polynomial maps `f = (f₁, …, f_m)` in
//! `k[t₁, …, t_n]`.
//!
//! The questions: is `g` determined by `f` (constant on fibers), does it lie
//! in `k[f]`, in `k(f)`, in `rad_χ(k[f])`, and is `f` almost surjective.
//! Answers are statements over the algebraic closure of the base field.
//!
//! Results in the image of `f` are written in variables `x₁, …, x_m` (and
//! `x_{m+1}` for the closure generator), ordered by grevlex.

mod certificate;
mod surjectivity;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::ideal::{fresh_name, Ideal, IdealError, DEFAULT_STEP_BUDGET};
use crate::poly::{same_ctx, Ctx, MonomialOrder, PolyError, Polynomial, VarContext};

pub use certificate::{
    AlmostSurjWitness, Certificate, ClosureCertificate, Decomposition, DeterminednessResult, RationalRep,
    Verdict, VerdictValue, WitnessKind,
};

/// ν cap used by `rad_χ` search when no closure degree is available.
pub const FALLBACK_NU_CAP: u32 = 2;
pub const DEFAULT_POWER_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("arity error: {0}")]
    Arity(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("closure ideal has {0} reduced generators, expected one")]
    NotPrincipal(usize),
    #[error("g is transcendental over k(f)")]
    TranscendentalOverImage,
    #[error("the components of f are algebraically dependent")]
    AlgebraicallyDependent,
    #[error("operation needs positive characteristic")]
    CharacteristicZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),
    #[error("g is not determined by f")]
    NotDetermined,
    #[error("certificate failed re-verification: {0}")]
    VerificationFailed(String),
    #[error("step budget of {0} reductions exhausted")]
    ResourceExhausted(u64),
    #[error(transparent)]
    Ideal(IdealError),
    #[error(transparent)]
    Poly(PolyError),
}

impl From<IdealError> for DetError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::ResourceExhausted(b) => DetError::ResourceExhausted(b),
            IdealError::ContextMismatch => DetError::ContextMismatch,
            IdealError::Poly(p) => p.into(),
            other => DetError::Ideal(other),
        }
    }
}

impl From<PolyError> for DetError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ContextMismatch => DetError::ContextMismatch,
            other => DetError::Poly(other),
        }
    }
}

/// `f = (f₁, …, f_m)`, all in one context with `n ≥ 1` variables.
#[derive(Debug, Clone)]
pub struct PolyMap {
    ctx: Ctx,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, DetError> {
        let Some(first) = components.first() else {
            return Err(DetError::Arity("a map needs at least one component".into()));
        };
        let ctx = first.ctx().clone();
        if ctx.arity() == 0 {
            return Err(DetError::Arity("a map needs at least one domain variable".into()));
        }
        if components.iter().any(|c| !same_ctx(c.ctx(), &ctx)) {
            return Err(DetError::ContextMismatch);
        }
        Ok(PolyMap { ctx, components })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `n`.
    pub fn domain_arity(&self) -> usize {
        self.ctx.arity()
    }

    /// `m`.
    pub fn codomain_arity(&self) -> usize {
        self.components.len()
    }

    /// `x1, …, xk` under grevlex over the same field.
    pub fn image_ctx(&self, k: usize) -> Ctx {
        VarContext::new((1..=k).map(|i| format!("x{i}")), MonomialOrder::Grevlex, self.field())
            .expect("distinct names")
    }

    /// `p(f)` for `p` in `m` variables.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, DetError> {
        if p.ctx().arity() != self.codomain_arity() {
            return Err(DetError::Arity(format!(
                "expected a polynomial in {} variables, got {}",
                self.codomain_arity(),
                p.ctx().arity()
            )));
        }
        Ok(p.compose(&self.components)?)
    }

    fn check(&self, g: &Polynomial) -> Result<(), DetError> {
        if same_ctx(g.ctx(), &self.ctx) {
            Ok(())
        } else {
            Err(DetError::ContextMismatch)
        }
    }
}

/// Whether `p(f)` divides `q(f)`. When `p(f) = 0` this holds exactly when
/// `q(f) = 0`.
pub fn divides_after_composition(p: &Polynomial, q: &Polynomial, f: &PolyMap) -> Result<bool, DetError> {
    let pf = f.apply(p)?;
    let qf = f.apply(q)?;
    if pf.is_zero() {
        return Ok(qf.is_zero());
    }
    Ok(qf.exact_divide(&pf)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub step_budget: u64,
    /// Overrides the default `rad_χ` search cap.
    pub nu_cap: Option<u32>,
    /// Largest power tried when expanding an almost-surjectivity witness.
    pub power_cap: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { step_budget: DEFAULT_STEP_BUDGET, nu_cap: None, power_cap: DEFAULT_POWER_CAP }
    }
}

/// Entry point for all decision procedures; holds the resource settings.
#[derive(Debug, Clone, Default)]
pub struct Decider {
    opts: Options,
}

impl Decider {
    pub fn new(opts: Options) -> Self {
        Decider { opts }
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    fn ideal(&self, ctx: &Ctx, gens: Vec<Polynomial>) -> Result<Ideal, DetError> {
        Ok(Ideal::new(ctx, gens)?.with_budget(self.opts.step_budget))
    }

    /// Context `[t₁…t_n, y₁…y_k]` with names kept distinct from the user's.
    fn graph_ctx(&self, f: &PolyMap, k: usize, order: MonomialOrder) -> Result<Ctx, DetError> {
        let mut names = f.ctx.names().to_vec();
        for i in 1..=k {
            let y = fresh_name(&names, &format!("y{i}"));
            names.push(y);
        }
        Ok(VarContext::new(names, order, f.field())?)
    }

    /// `⟨yᵢ − fᵢ⟩ (+ ⟨y_{m+1} − g⟩)` under a block order eliminating `t`.
    pub fn graph_ideal(&self, f: &PolyMap, g: Option<&Polynomial>) -> Result<Ideal, DetError> {
        if let Some(g) = g {
            f.check(g)?;
        }
        let n = f.domain_arity();
        let k = f.codomain_arity() + usize::from(g.is_some());
        let ctx = self.graph_ctx(f, k, MonomialOrder::Block { front: n })?;
        let tmap: Vec<usize> = (0..n).collect();
        let gens = f
            .components
            .iter()
            .chain(g)
            .enumerate()
            .map(|(i, c)| Polynomial::var(&ctx, n + i).sub(&c.embed(&ctx, &tmap)))
            .collect();
        self.ideal(&ctx, gens)
    }

    /// The elimination ideal of a graph ideal, moved to `x1…xk`.
    fn project(&self, f: &PolyMap, graph: &Ideal, k: usize) -> Result<Ideal, DetError> {
        let n = f.domain_arity();
        let xctx = f.image_ctx(k);
        let back: Vec<usize> = (n..n + k).collect();
        let gens = graph.groebner()?.iter().filter_map(|g| g.restrict(&xctx, &back)).collect();
        self.ideal(&xctx, gens)
    }

    /// Ideal of the Zariski closure of the range, in `x1…xm`.
    pub fn range_closure(&self, f: &PolyMap) -> Result<Ideal, DetError> {
        let graph = self.graph_ideal(f, None)?;
        self.project(f, &graph, f.codomain_arity())
    }

    pub fn algebraically_independent(&self, f: &PolyMap) -> Result<bool, DetError> {
        if f.codomain_arity() > f.domain_arity() {
            return Ok(false);
        }
        if f.field().characteristic() == 0 && jacobian_has_full_rank(f)? {
            return Ok(true);
        }
        Ok(self.range_closure(f)?.is_zero_ideal()?)
    }

    /// The monic generator of the closure of `{(f(a), g(a))}`.
    pub fn irr_of_closure(&self, f: &PolyMap, g: &Polynomial) -> Result<ClosureCertificate, DetError> {
        let m = f.codomain_arity();
        let graph = self.graph_ideal(f, Some(g))?;
        let closure = self.project(f, &graph, m + 1)?;
        let gb = closure.groebner()?;
        match gb.len() {
            0 => return Err(DetError::TranscendentalOverImage),
            1 => {}
            k => return Err(DetError::NotPrincipal(k)),
        }
        let q = gb[0].monic();
        let d = q.degree_in(m).unwrap_or(0);
        if d == 0 {
            return Err(DetError::AlgebraicallyDependent);
        }
        Ok(ClosureCertificate { q, d, m })
    }

    /// `(r, s)` with `g = r(f)/s(f)` when the closure generator is linear in
    /// the last variable; `None` when its degree exceeds one.
    pub fn rational_membership(&self, f: &PolyMap, g: &Polynomial) -> Result<Option<RationalRep>, DetError> {
        let cert = self.irr_of_closure(f, g)?;
        if cert.d != 1 {
            return Ok(None);
        }
        let m = f.codomain_arity();
        let xctx = f.image_ctx(m);
        let idx: Vec<usize> = (0..m).collect();
        let coeffs = cert.q.coefficients_in(m);
        let q0 = coeffs[0].restrict(&xctx, &idx).expect("coefficient free of the last variable");
        let s = coeffs[1].restrict(&xctx, &idx).expect("coefficient free of the last variable");
        let inv = s.leading_coeff().expect("degree one").inverse().map_err(PolyError::from)?;
        let rep = RationalRep { r: q0.neg().scale(&inv), s: s.scale(&inv) };
        if !rep.verify(f, g)? {
            return Err(DetError::VerificationFailed("g·s(f) = r(f)".into()));
        }
        Ok(Some(rep))
    }

    /// Normal form of `g` modulo the graph ideal of `f`, in the graph
    /// context.
    pub(crate) fn ring_normal_form(&self, f: &PolyMap, g: &Polynomial) -> Result<Polynomial, DetError> {
        f.check(g)?;
        let graph = self.graph_ideal(f, None)?;
        let tmap: Vec<usize> = (0..f.domain_arity()).collect();
        Ok(graph.normal_form(&g.embed(graph.ctx(), &tmap))?)
    }

    /// `p` with `p(f) = g`, if one exists.
    pub fn subalgebra_membership(&self, f: &PolyMap, g: &Polynomial) -> Result<Option<Polynomial>, DetError> {
        let nf = self.ring_normal_form(f, g)?;
        self.ring_member_from_nf(f, g, &nf)
    }

    fn ring_member_from_nf(
        &self,
        f: &PolyMap,
        g: &Polynomial,
        nf: &Polynomial,
    ) -> Result<Option<Polynomial>, DetError> {
        let (n, m) = (f.domain_arity(), f.codomain_arity());
        let back: Vec<usize> = (n..n + m).collect();
        let Some(p) = nf.restrict(&f.image_ctx(m), &back) else {
            return Ok(None);
        };
        if f.apply(&p)? != *g {
            return Err(DetError::VerificationFailed("p(f) = g".into()));
        }
        Ok(Some(p))
    }

    /// Default search cap `⌈log_χ d⌉ + 1`.
    pub fn default_nu_cap(d: u32, chi: u64) -> u32 {
        let mut e = 0;
        let mut pow = 1u64;
        while pow < d as u64 {
            pow = pow.saturating_mul(chi);
            e += 1;
        }
        e + 1
    }

    /// Smallest `ν ≤ cap` with `g^(χ^ν) ∈ k[f]`.
    pub fn radchi_membership(
        &self,
        f: &PolyMap,
        g: &Polynomial,
        nu_cap: Option<u32>,
    ) -> Result<Option<Decomposition>, DetError> {
        let chi = f.field().characteristic();
        if chi == 0 {
            return Err(DetError::CharacteristicZero);
        }
        f.check(g)?;
        let cap = match nu_cap.or(self.opts.nu_cap) {
            Some(c) => c,
            None => match self.irr_of_closure(f, g) {
                Ok(cert) => Self::default_nu_cap(cert.d, chi),
                Err(DetError::TranscendentalOverImage) => return Ok(None),
                Err(DetError::AlgebraicallyDependent | DetError::NotPrincipal(_)) => FALLBACK_NU_CAP,
                Err(e) => return Err(e),
            },
        };
        let mut h = g.clone();
        for nu in 0..=cap {
            if let Some(p) = self.subalgebra_membership(f, &h)? {
                return Ok(Some(Decomposition { p, nu }));
            }
            h = h.pow(chi);
        }
        Ok(None)
    }

    /// `⟨fᵢ(s) − fᵢ(u)⟩ + ⟨z·(g(s) − g(u)) − 1⟩` in `k[s, u, z]`.
    pub fn double_point_ideal(&self, f: &PolyMap, g: &Polynomial) -> Result<Ideal, DetError> {
        f.check(g)?;
        let n = f.domain_arity();
        let names = (1..=n)
            .map(|i| format!("s{i}"))
            .chain((1..=n).map(|i| format!("u{i}")))
            .chain(std::iter::once("z".to_string()));
        let ctx = VarContext::new(names, MonomialOrder::Grevlex, f.field())?;
        let smap: Vec<usize> = (0..n).collect();
        let umap: Vec<usize> = (n..2 * n).collect();
        let diff = |p: &Polynomial| p.embed(&ctx, &smap).sub(&p.embed(&ctx, &umap));
        let mut gens: Vec<Polynomial> = f.components.iter().map(diff).collect();
        let z = Polynomial::var(&ctx, 2 * n);
        gens.push(z.mul(&diff(g)).sub(&Polynomial::one(&ctx)));
        self.ideal(&ctx, gens)
    }

    /// Determinedness over the closure of the base field, decided by the
    /// double-point ideal. A positive answer carries the strongest
    /// representation that could be found.
    pub fn is_determined(&self, f: &PolyMap, g: &Polynomial) -> Result<DeterminednessResult, DetError> {
        let j = self.double_point_ideal(f, g)?;
        if !j.is_unit()? {
            return Ok(DeterminednessResult { determined: false, certificate: Certificate::CounterexampleIdeal(j) });
        }
        let certificate = self.positive_certificate(f, g)?;
        Ok(DeterminednessResult { determined: true, certificate })
    }

    fn positive_certificate(&self, f: &PolyMap, g: &Polynomial) -> Result<Certificate, DetError> {
        if let Some(p) = self.subalgebra_membership(f, g)? {
            return Ok(Certificate::InRing(p));
        }
        if f.field().characteristic() > 0 {
            if let Some(dec) = self.radchi_membership(f, g, None)? {
                return Ok(Certificate::RadChi { p: dec.p, nu: dec.nu });
            }
        }
        match self.rational_membership(f, g) {
            Ok(Some(rep)) => Ok(Certificate::RationalOnly(rep)),
            Err(e @ (DetError::ResourceExhausted(_) | DetError::VerificationFailed(_))) => Err(e),
            _ => Ok(Certificate::UnitIdeal),
        }
    }

    /// Determinedness through membership, valid for independent, almost
    /// surjective `f`. Both hypotheses are checked first.
    pub fn determined_theorem_route(&self, f: &PolyMap, g: &Polynomial) -> Result<DeterminednessResult, DetError> {
        f.check(g)?;
        if !self.algebraically_independent(f)? {
            return Err(DetError::HypothesisNotVerified("components are algebraically dependent".into()));
        }
        let verdict = self.almost_surjectivity(f)?;
        if verdict.value() != VerdictValue::Yes {
            return Err(DetError::HypothesisNotVerified(format!(
                "almost-surjectivity verdict is {}",
                verdict.value()
            )));
        }
        self.theorem_route_assuming(f, g)
    }

    /// The theorem route without re-checking its hypotheses. Answers are
    /// only meaningful when `f` is independent and almost surjective.
    pub fn theorem_route_assuming(&self, f: &PolyMap, g: &Polynomial) -> Result<DeterminednessResult, DetError> {
        let chi = f.field().characteristic();
        if chi == 0 {
            let nf = self.ring_normal_form(f, g)?;
            return Ok(match self.ring_member_from_nf(f, g, &nf)? {
                Some(p) => DeterminednessResult { determined: true, certificate: Certificate::InRing(p) },
                None => DeterminednessResult {
                    determined: false,
                    certificate: Certificate::NotInRing { normal_form: nf, nu: 0 },
                },
            });
        }
        let m = f.codomain_arity();
        let mut h = g.clone();
        let mut nu = 0;
        let closure = loop {
            let cert = match self.irr_of_closure(f, &h) {
                Ok(c) => c,
                Err(DetError::TranscendentalOverImage) => {
                    return Ok(DeterminednessResult { determined: false, certificate: Certificate::Transcendental })
                }
                Err(e) => return Err(e),
            };
            if !cert.q.partial_derivative(m).is_zero() {
                break cert;
            }
            // q is a polynomial in the χ-th power of the last variable; the
            // degree strictly drops for h^χ
            h = h.pow(chi);
            nu += 1;
        };
        if closure.d > 1 {
            return Ok(DeterminednessResult {
                determined: false,
                certificate: Certificate::MultiSheeted { closure, nu },
            });
        }
        match self.radchi_membership(f, g, Some(nu + 1))? {
            Some(dec) => Ok(DeterminednessResult {
                determined: true,
                certificate: Certificate::RadChi { p: dec.p, nu: dec.nu },
            }),
            None => Ok(DeterminednessResult {
                determined: false,
                certificate: Certificate::NotInRing { normal_form: self.ring_normal_form(f, &h)?, nu },
            }),
        }
    }

    /// From `p(f) | q(f)` with `p ∤ q`, builds `b = q₁(f)·q₁(f)/p₁(f)`
    /// where `p₁, q₁` are `p, q` with their gcd removed. `b` is determined
    /// by `f` but not in `k[f]`.
    pub fn non_almost_surjective_witness(
        &self,
        f: &PolyMap,
        p: &Polynomial,
        q: &Polynomial,
    ) -> Result<Polynomial, DetError> {
        if !divides_after_composition(p, q, f)? {
            return Err(DetError::PreconditionViolated("p(f) does not divide q(f)".into()));
        }
        if q.exact_divide(p)?.is_some() {
            return Err(DetError::PreconditionViolated("p divides q".into()));
        }
        if !self.algebraically_independent(f)? {
            return Err(DetError::PreconditionViolated("components of f are algebraically dependent".into()));
        }
        let d = crate::ideal::gcd_with_budget(p, q, self.opts.step_budget)?;
        let p1 = p.exact_divide(&d)?.expect("gcd divides p");
        let q1 = q.exact_divide(&d)?.expect("gcd divides q");
        let q1f = f.apply(&q1)?;
        let Some(a) = q1f.exact_divide(&f.apply(&p1)?)? else {
            return Err(DetError::PreconditionViolated("p₁(f) does not divide q₁(f)".into()));
        };
        let b = q1f.mul(&a);
        if !self.is_determined(f, &b)?.determined {
            return Err(DetError::VerificationFailed("b is not determined".into()));
        }
        if self.subalgebra_membership(f, &b)?.is_some() {
            return Err(DetError::VerificationFailed("b lies in k[f]".into()));
        }
        Ok(b)
    }

    /// `p` (and `ν` in positive characteristic) with `p(f) = g^(χ^ν)`.
    /// With `assume_surjective` the almost-surjectivity check is skipped.
    pub fn decompose(&self, f: &PolyMap, g: &Polynomial, assume_surjective: bool) -> Result<Decomposition, DetError> {
        if !assume_surjective {
            let verdict = self.almost_surjectivity(f)?;
            if verdict.value() != VerdictValue::Yes {
                return Err(DetError::HypothesisNotVerified(format!(
                    "almost-surjectivity verdict is {}",
                    verdict.value()
                )));
            }
        }
        if !self.double_point_ideal(f, g)?.is_unit()? {
            return Err(DetError::NotDetermined);
        }
        let found = if f.field().characteristic() == 0 {
            self.subalgebra_membership(f, g)?.map(|p| Decomposition { p, nu: 0 })
        } else {
            self.radchi_membership(f, g, None)?
        };
        found.ok_or_else(|| {
            DetError::HypothesisNotVerified("no polynomial representation, so f is not almost surjective".into())
        })
    }
}

/// Rank of the Jacobian at a few fixed integer points reaches `m`.
fn jacobian_has_full_rank(f: &PolyMap) -> Result<bool, DetError> {
    let n = f.domain_arity();
    let field = f.field();
    let jac: Vec<Vec<Polynomial>> =
        f.components.iter().map(|c| (0..n).map(|j| c.partial_derivative(j)).collect()).collect();
    for trial in 0..4i64 {
        let point: Vec<FieldElement> =
            (0..n as i64).map(|j| field.from_i64(2 + 3 * j + trial * (j * j + 5))).collect();
        let mut mat = Vec::with_capacity(jac.len());
        for row in &jac {
            mat.push(row.iter().map(|p| p.evaluate(&point)).collect::<Result<Vec<_>, _>>()?);
        }
        if rank(mat) == f.codomain_arity() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn rank(mut mat: Vec<Vec<FieldElement>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pivot);
        let inv = mat[r][c].inverse().expect("nonzero pivot");
        let (top, rest) = mat.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest {
            let factor = &row[c] * &inv;
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row).skip(c) {
                *x = &*x - &(&factor * p);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
