//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Terms are kept in a `Vec` sorted strictly decreasing in the context's
//! monomial order, with no zero coefficients. Every constructor and every
//! operation returns this canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("resultant degree must be at least 1 in the chosen variable")]
    DegreeZero,
    #[error("declared degree {declared} is below the actual degree {actual}")]
    DegreeExceeded { declared: u32, actual: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Monomial orders. `Block { front }` compares the first `front` variables
/// by grevlex and breaks ties by grevlex on the rest, which makes it an
/// elimination order for the front block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Block { front: usize },
}

/// Ordered variable names, a monomial order and the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    order: MonomialOrder,
    field: FieldSpec,
}

pub type Ctx = Arc<VarContext>;

impl VarContext {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        order: MonomialOrder,
        field: FieldSpec,
    ) -> Result<Ctx, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        if let MonomialOrder::Block { front } = order {
            assert!(front <= names.len(), "block size exceeds arity");
        }
        Ok(Arc::new(VarContext { names, order, field }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Same names and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ctx {
        Arc::new(VarContext { names: self.names.clone(), order, field: self.field })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex(&a.0, &b.0),
            MonomialOrder::Block { front } => grevlex(&a.0[..front], &b.0[..front])
                .then_with(|| grevlex(&a.0[front..], &b.0[front..])),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

pub type Term = (Monomial, FieldElement);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", crate::expr::print(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print(self))
    }
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Ctx, c: FieldElement) -> Self {
        debug_assert_eq!(c.spec(), ctx.field());
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx: ctx.clone(), terms: vec![(Monomial::one(ctx.arity()), c)] }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, ctx.field().one())
    }

    pub fn from_i64(ctx: &Ctx, v: i64) -> Self {
        Self::constant(ctx, ctx.field().from_i64(v))
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(Monomial::var(ctx.arity(), i), ctx.field().one())],
        }
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: FieldElement) -> Self {
        Self::from_terms(ctx, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary terms (any order,
    /// duplicates and zeros allowed).
    pub fn from_terms(ctx: &Ctx, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial { ctx: ctx.clone(), terms: out }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> FieldElement {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field().zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in variable `i`; `None` stands for −∞ (zero polynomial).
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[i]).max()
    }

    /// Which variables occur with a positive exponent.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ctx.arity()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] > 0)
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            !c.is_zero() && c.is_canonical() && m.0.len() == self.ctx.arity() && c.spec() == self.field()
        }) && self
            .terms
            .windows(2)
            .all(|w| self.ctx.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial, PolyError> {
        self.check_ctx(other)?;
        Ok(match op {
            PolyOp::Add => self.add(other),
            PolyOp::Sub => self.sub(other),
            PolyOp::Mul => self.mul(other),
        })
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let ctx = &self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ctx.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial { ctx: ctx.clone(), terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(same_ctx(&self.ctx, &other.ctx));
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(same_ctx(&self.ctx, &other.ctx));
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·m·self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(tm, a)| (tm.mul(m), a * c)).collect(),
        }
    }

    /// `self − c·m·g` without materializing the product.
    pub fn sub_mul_term(&self, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(same_ctx(&self.ctx, &other.ctx));
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prod.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(&self.ctx, prod)
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// The quotient `a` with `a·q = self`, if `q` divides `self` in the
    /// polynomial ring.
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check_ctx(q)?;
        let (lm_q, lc_q) = q.leading_term().ok_or(PolyError::DivisionByZero)?;
        let inv = lc_q.inverse()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            if !lm_q.divides(lm_r) {
                return Ok(None);
            }
            let m = lm_r.div(lm_q);
            let c = lc_r * &inv;
            rem = rem.sub_mul_term(&c, &m, q);
            quot.push((m, c));
        }
        let a = Polynomial::from_terms(&self.ctx, quot);
        if a.mul(q) != *self {
            return Ok(None);
        }
        Ok(Some(a))
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                (Monomial(e), c * &field.from_i64(k as i64))
            })
            .collect();
        Polynomial::from_terms(&self.ctx, terms)
    }

    pub fn derivative_named(&self, name: &str) -> Result<Polynomial, PolyError> {
        Ok(self.partial_derivative(self.ctx.index_of(name)?))
    }

    /// `self(fs₁, …, fs_m)`; the result lives in the context of `fs`.
    pub fn compose(&self, fs: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if fs.len() != self.ctx.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.arity(), got: fs.len() });
        }
        let Some(first) = fs.first() else {
            return Err(PolyError::ArityMismatch { expected: 1, got: 0 });
        };
        let target = first.ctx.clone();
        for f in fs {
            if !same_ctx(&f.ctx, &target) {
                return Err(PolyError::ContextMismatch);
            }
        }
        if target.field() != self.field() {
            return Err(PolyError::Field(FieldError::MixedField(self.field(), target.field())));
        }
        // powers[i][k] = fs[i]^k, built lazily up to the largest exponent
        let mut powers: Vec<Vec<Polynomial>> =
            fs.iter().map(|_| vec![Polynomial::one(&target)]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&fs[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.ctx.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.arity(), got: point.len() });
        }
        if let Some(bad) = point.iter().find(|a| a.spec() != self.field()) {
            return Err(PolyError::Field(FieldError::MixedField(self.field(), bad.spec())));
        }
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (a, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &a.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients with respect to variable `i`: entry `k` is the
    /// coefficient of `v^k`, still expressed in this context.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(&self.ctx, t)).collect()
    }

    /// Resultant with respect to variable `i`, treating `self` and `q` as
    /// univariate of declared degrees `d` and `e`. Computed as the Sylvester
    /// determinant by fraction-free elimination.
    pub fn resultant(&self, q: &Polynomial, i: usize, d: u32, e: u32) -> Result<Polynomial, PolyError> {
        self.check_ctx(q)?;
        if i >= self.ctx.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.arity(), got: i + 1 });
        }
        let dp = self.degree_in(i).unwrap_or(0);
        let dq = q.degree_in(i).unwrap_or(0);
        if d == 0 || e == 0 || dp == 0 || dq == 0 {
            return Err(PolyError::DegreeZero);
        }
        if dp > d {
            return Err(PolyError::DegreeExceeded { declared: d, actual: dp });
        }
        if dq > e {
            return Err(PolyError::DegreeExceeded { declared: e, actual: dq });
        }
        let (d, e) = (d as usize, e as usize);
        let pc = pad(self.coefficients_in(i), d + 1, &self.ctx);
        let qc = pad(q.coefficients_in(i), e + 1, &self.ctx);
        let n = d + e;
        let zero = Polynomial::zero(&self.ctx);
        let mut mat = vec![vec![zero.clone(); n]; n];
        for r in 0..e {
            for k in 0..=d {
                mat[r][r + k] = pc[d - k].clone();
            }
        }
        for r in 0..d {
            for k in 0..=e {
                mat[e + r][r + k] = qc[e - k].clone();
            }
        }
        Ok(bareiss_determinant(mat, &self.ctx))
    }

    /// If every exponent of variable `i` is divisible by `chi`, returns `p`
    /// with `self = p(…, v^chi, …)`.
    pub fn chi_power_decompose(&self, i: usize, chi: u32) -> Option<Polynomial> {
        assert!(chi > 0);
        if self.terms.iter().any(|(m, _)| m.0[i] % chi != 0) {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[i] /= chi;
                (Monomial(e), c.clone())
            })
            .collect();
        Some(Polynomial::from_terms(&self.ctx, terms))
    }

    /// `h` with `h^χ = self` over 𝔽_χ, when it exists.
    pub fn chi_root(&self) -> Result<Option<Polynomial>, PolyError> {
        let chi = self.field().characteristic();
        if chi == 0 {
            return Err(PolyError::Field(FieldError::CharacteristicZero));
        }
        let chi = chi as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0.iter().any(|e| e % chi != 0) {
                return Ok(None);
            }
            let e = m.0.iter().map(|e| e / chi).collect();
            terms.push((Monomial(e), c.frobenius_root(1)?));
        }
        Ok(Some(Polynomial::from_terms(&self.ctx, terms)))
    }

    /// Re-embeds into `target`, sending variable `k` of `self` to variable
    /// `var_map[k]` of `target`.
    pub fn embed(&self, target: &Ctx, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ctx.arity());
        debug_assert_eq!(target.field(), self.field());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.arity()];
                for (k, &x) in m.0.iter().enumerate() {
                    e[var_map[k]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Re-sorts into a context with the same variables but another order.
    pub fn with_ctx(&self, target: &Ctx) -> Polynomial {
        debug_assert_eq!(target.arity(), self.ctx.arity());
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Inverse of [`embed`](Self::embed) for polynomials whose support lies
    /// in the image of `var_map`. Returns `None` otherwise.
    pub fn restrict(&self, target: &Ctx, var_map: &[usize]) -> Option<Polynomial> {
        let used = self.support();
        for (k, &u) in used.iter().enumerate() {
            if u && !var_map.contains(&k) {
                return None;
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(var_map.iter().map(|&k| m.0[k]).collect()), c.clone()))
            .collect();
        Some(Polynomial::from_terms(target, terms))
    }
}

fn pad(mut v: Vec<Polynomial>, len: usize, ctx: &Ctx) -> Vec<Polynomial> {
    v.resize(len, Polynomial::zero(ctx));
    v
}

/// Fraction-free Gaussian elimination; every division is exact.
pub(crate) fn bareiss_determinant(mut mat: Vec<Vec<Polynomial>>, ctx: &Ctx) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::one(ctx);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(ctx);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .exact_divide(&prev)
                    .expect("same context")
                    .expect("Bareiss division is exact");
            }
            mat[i][k] = Polynomial::zero(ctx);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
