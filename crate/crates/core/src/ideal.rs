//! Ideals and the Gröbner-basis engine.
//!
//! Bases are computed with Buchberger's algorithm using the normal pair
//! selection strategy (smallest lcm by degree, then by the context order)
//! and both of Buchberger's criteria. Every computation is bounded by a step
//! budget counted in reduction steps.

use std::collections::HashSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::poly::{same_ctx, Ctx, Monomial, MonomialOrder, PolyError, Polynomial, VarContext};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("step budget of {0} reductions exhausted")]
    ResourceExhausted(u64),
    #[error("saturation by the zero polynomial")]
    SaturateByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A polynomial ideal with a lazily computed reduced Gröbner basis for the
/// context's order. The basis is computed once and then published; readers
/// never observe a partial basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    ctx: Ctx,
    generators: Vec<Polynomial>,
    budget: u64,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ctx: &Ctx, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if generators.iter().any(|g| !same_ctx(g.ctx(), ctx)) {
            return Err(IdealError::ContextMismatch);
        }
        let generators = if generators.is_empty() { vec![Polynomial::zero(ctx)] } else { generators };
        Ok(Ideal { ctx: ctx.clone(), generators, budget: DEFAULT_STEP_BUDGET, gb: OnceLock::new() })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::new(ctx, Vec::new()).unwrap()
    }

    pub fn unit(ctx: &Ctx) -> Self {
        Self::new(ctx, vec![Polynomial::one(ctx)]).unwrap()
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis; empty for the zero ideal.
    pub fn groebner(&self) -> Result<&[Polynomial], IdealError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger(&self.generators, self.budget)?;
        // a concurrent writer may have won; both computed the same basis
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn is_zero_ideal(&self) -> Result<bool, IdealError> {
        Ok(self.groebner()?.is_empty())
    }

    pub fn is_unit(&self) -> Result<bool, IdealError> {
        Ok(self.groebner()?.iter().any(|g| g.is_constant()))
    }

    /// Remainder of `g` on division by the reduced basis.
    pub fn normal_form(&self, g: &Polynomial) -> Result<Polynomial, IdealError> {
        if !same_ctx(g.ctx(), &self.ctx) {
            return Err(IdealError::ContextMismatch);
        }
        let mut steps = 0;
        reduce(g, self.groebner()?, &mut steps, u64::MAX)
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.normal_form(g)?.is_zero())
    }

    /// Equality of ideals via their reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(IdealError::ContextMismatch);
        }
        Ok(self.groebner()? == other.groebner()?)
    }

    /// `I ∩ k[keep]`, returned in a context restricted to the `keep`
    /// variables (in their original relative order).
    pub fn elimination(&self, keep: &[usize]) -> Result<Ideal, IdealError> {
        let n = self.ctx.arity();
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
            return Err(PolyError::ArityMismatch { expected: n, got: bad + 1 }.into());
        }
        let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let block_names: Vec<String> =
            elim.iter().chain(&keep).map(|&i| self.ctx.names()[i].clone()).collect();
        let block = VarContext::new(block_names, MonomialOrder::Block { front: elim.len() }, self.ctx.field())?;
        let mut to_block = vec![0; n];
        for (pos, &i) in elim.iter().chain(&keep).enumerate() {
            to_block[i] = pos;
        }
        let gens = self.generators.iter().map(|g| g.embed(&block, &to_block)).collect();
        let big = Ideal::new(&block, gens)?.with_budget(self.budget);
        let order = match self.ctx.order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Grevlex,
        };
        let target = VarContext::new(keep.iter().map(|&i| self.ctx.names()[i].clone()), order, self.ctx.field())?;
        let back: Vec<usize> = (elim.len()..n).collect();
        let kept = big
            .groebner()?
            .iter()
            .filter_map(|g| g.restrict(&target, &back))
            .collect();
        Ok(Ideal::new(&target, kept)?.with_budget(self.budget))
    }

    /// Elimination by variable names.
    pub fn eliminate_to(&self, keep: &[&str]) -> Result<Ideal, IdealError> {
        let idx = keep.iter().map(|k| self.ctx.index_of(k)).collect::<Result<Vec<_>, _>>()?;
        self.elimination(&idx)
    }

    /// Whether some power of `g` lies in the ideal, decided by testing
    /// `1 ∈ I + ⟨z·g − 1⟩` for a fresh variable `z`.
    pub fn radical_contains(&self, g: &Polynomial) -> Result<bool, IdealError> {
        if !same_ctx(g.ctx(), &self.ctx) {
            return Err(IdealError::ContextMismatch);
        }
        let (ext, z) = self.extend_with_fresh("z", MonomialOrder::Grevlex)?;
        let n = self.ctx.arity();
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|p| p.embed(&ext, &map)).collect();
        let zg = Polynomial::var(&ext, z).mul(&g.embed(&ext, &map));
        gens.push(zg.sub(&Polynomial::one(&ext)));
        Ideal::new(&ext, gens)?.with_budget(self.budget).is_unit()
    }

    /// `I : g^∞`.
    pub fn saturation(&self, g: &Polynomial) -> Result<Ideal, IdealError> {
        if !same_ctx(g.ctx(), &self.ctx) {
            return Err(IdealError::ContextMismatch);
        }
        if g.is_zero() {
            return Err(IdealError::SaturateByZero);
        }
        let (ext, z) = self.extend_with_fresh("z", self.ctx.order())?;
        let n = self.ctx.arity();
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|p| p.embed(&ext, &map)).collect();
        gens.push(Polynomial::var(&ext, z).mul(&g.embed(&ext, &map)).sub(&Polynomial::one(&ext)));
        let sat = Ideal::new(&ext, gens)?.with_budget(self.budget).elimination(&map)?;
        self.rehome(sat)
    }

    /// `I ∩ J` by eliminating a tag variable `w` from `w·I + (1 − w)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(IdealError::ContextMismatch);
        }
        let (ext, w) = self.extend_with_fresh("w", self.ctx.order())?;
        let n = self.ctx.arity();
        let map: Vec<usize> = (0..n).collect();
        let wv = Polynomial::var(&ext, w);
        let one_minus_w = Polynomial::one(&ext).sub(&wv);
        let gens = self
            .generators
            .iter()
            .map(|p| wv.mul(&p.embed(&ext, &map)))
            .chain(other.generators.iter().map(|p| one_minus_w.mul(&p.embed(&ext, &map))))
            .collect();
        let meet = Ideal::new(&ext, gens)?.with_budget(self.budget.max(other.budget)).elimination(&map)?;
        self.rehome(meet)
    }

    /// Dimension of the zero set: −1 for the unit ideal, otherwise the size
    /// of a largest variable set independent modulo the leading-term ideal.
    pub fn dimension(&self) -> Result<i64, IdealError> {
        let gb = self.groebner()?;
        if gb.iter().any(|g| g.is_constant()) {
            return Ok(-1);
        }
        let n = self.ctx.arity();
        let supports: Vec<u64> = gb
            .iter()
            .map(|g| mask(g.leading_monomial().unwrap()))
            .collect();
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones() as i64;
            if size > best && supports.iter().all(|&lm| lm & !s != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Context with one extra variable appended, named `base` or a
    /// variant of it that does not clash.
    fn extend_with_fresh(&self, base: &str, order: MonomialOrder) -> Result<(Ctx, usize), IdealError> {
        let name = fresh_name(self.ctx.names(), base);
        let names: Vec<String> = self.ctx.names().iter().cloned().chain(std::iter::once(name)).collect();
        let order = match order {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Grevlex,
        };
        let z = names.len() - 1;
        Ok((VarContext::new(names, order, self.ctx.field())?, z))
    }

    /// Moves an ideal over the same variables back into this context.
    fn rehome(&self, other: Ideal) -> Result<Ideal, IdealError> {
        let gens = other.generators.iter().map(|g| g.with_ctx(&self.ctx)).collect();
        Ok(Ideal::new(&self.ctx, gens)?.with_budget(self.budget))
    }
}

fn mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// `base`, or `base` followed by underscores until it is unused.
pub fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// gcd via `p·q / lcm` with `⟨lcm⟩ = ⟨p⟩ ∩ ⟨q⟩`, normalized monic.
pub fn gcd_multivariate(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, IdealError> {
    gcd_with_budget(p, q, DEFAULT_STEP_BUDGET)
}

pub fn gcd_with_budget(p: &Polynomial, q: &Polynomial, budget: u64) -> Result<Polynomial, IdealError> {
    if !same_ctx(p.ctx(), q.ctx()) {
        return Err(IdealError::ContextMismatch);
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(IdealError::BothZero),
        (true, false) => return Ok(q.monic()),
        (false, true) => return Ok(p.monic()),
        _ => {}
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Polynomial::one(p.ctx()));
    }
    let ctx = p.ctx();
    let a = Ideal::new(ctx, vec![p.clone()])?.with_budget(budget);
    let b = Ideal::new(ctx, vec![q.clone()])?.with_budget(budget);
    let meet = a.intersection(&b)?;
    let gb = meet.groebner()?;
    debug_assert_eq!(gb.len(), 1, "intersection of principal ideals is principal");
    let lcm = &gb[0];
    let g = p
        .mul(q)
        .exact_divide(lcm)?
        .expect("lcm divides the product");
    Ok(g.monic())
}

/// Full reduction of `p` by `basis` (monic elements).
fn reduce(p: &Polynomial, basis: &[Polynomial], steps: &mut u64, budget: u64) -> Result<Polynomial, IdealError> {
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((lm, lc)) = cur.leading_term() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(lm))) {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let c = if gc.is_one() { lc.clone() } else { lc.try_div(gc).map_err(PolyError::from)? };
                let m = lm.div(gm);
                cur = cur.sub_mul_term(&c, &m, g);
                *steps += 1;
                if *steps > budget {
                    return Err(IdealError::ResourceExhausted(budget));
                }
            }
            None => rem.push(cur.pop_leading().unwrap()),
        }
    }
    Ok(Polynomial::from_terms(p.ctx(), rem))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &fc.inverse().unwrap());
    let b = g.mul_term(&l.div(gm), &gc.inverse().unwrap());
    a.sub(&b)
}

fn buchberger(generators: &[Polynomial], budget: u64) -> Result<Vec<Polynomial>, IdealError> {
    let ctx = generators[0].ctx().clone();
    let mut steps = 0u64;
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let r = reduce(g, &basis, &mut steps, budget)?;
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(&ctx)]);
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let (i, j) = select_pair(&pending, &basis, &ctx);
        pending.remove(&(i, j));
        let mi = basis[i].leading_monomial().unwrap();
        let mj = basis[j].leading_monomial().unwrap();
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis, &mut steps, budget)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(vec![Polynomial::one(&ctx)]);
        }
        let new = basis.len();
        basis.push(r);
        for k in 0..new {
            pending.insert((k, new));
        }
    }
    Ok(interreduce(basis, &ctx))
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn select_pair(pending: &HashSet<(usize, usize)>, basis: &[Polynomial], ctx: &Ctx) -> (usize, usize) {
    let key = |&(i, j): &(usize, usize)| {
        basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap())
    };
    *pending
        .iter()
        .min_by(|a, b| {
            let (la, lb) = (key(a), key(b));
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| ctx.cmp(&la, &lb))
                .then_with(|| a.cmp(b))
        })
        .unwrap()
}

/// Minimal, fully inter-reduced, monic, sorted by decreasing leading term.
fn interreduce(basis: Vec<Polynomial>, ctx: &Ctx) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && hm.divides(lm) && (hm != lm || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut steps = 0;
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut g = minimal[i].clone();
        let lead = g.pop_leading().unwrap();
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, h)| h.clone()).collect();
        let tail = reduce(&g, &others, &mut steps, u64::MAX).expect("unbounded budget");
        out.push(Polynomial::monomial(ctx, lead.0, lead.1).add(&tail).monic());
    }
    out.sort_by(|a, b| ctx.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::field::FieldSpec;
    use proptest::prelude::*;

    fn ctx(names: &[&str], order: MonomialOrder) -> Ctx {
        VarContext::new(names.iter().copied(), order, FieldSpec::Rationals).unwrap()
    }

    fn ideal(c: &Ctx, gens: &[&str]) -> Ideal {
        Ideal::new(c, gens.iter().map(|s| parse(s, c).unwrap()).collect()).unwrap()
    }

    fn polys(c: &Ctx, gens: &[&str]) -> Vec<Polynomial> {
        gens.iter().map(|s| parse(s, c).unwrap()).collect()
    }

    #[test]
    fn hand_buchberger_example() {
        let c = ctx(&["t1", "t2", "y1", "y2"], MonomialOrder::Lex);
        let i = ideal(&c, &["t1 - y1", "t1*t2 - y2"]);
        assert_eq!(i.groebner().unwrap(), polys(&c, &["t1 - y1", "t2*y1 - y2"]).as_slice());
    }

    #[test]
    fn zero_and_unit() {
        let c = ctx(&["x"], MonomialOrder::Grevlex);
        assert!(Ideal::zero(&c).groebner().unwrap().is_empty());
        assert!(ideal(&c, &["0"]).is_zero_ideal().unwrap());
        let u = ideal(&c, &["x", "x + 1"]);
        assert_eq!(u.groebner().unwrap(), polys(&c, &["1"]).as_slice());
        assert!(u.is_unit().unwrap());
    }

    #[test]
    fn groebner_is_idempotent_and_deterministic() {
        let c = ctx(&["a", "b", "c"], MonomialOrder::Grevlex);
        let gens = ["a^2 + b*c - 1", "a*b - c^2", "b^3 - a + 2*c"];
        let g1 = ideal(&c, &gens).groebner().unwrap().to_vec();
        let g2 = ideal(&c, &gens).groebner().unwrap().to_vec();
        assert_eq!(g1, g2);
        let again = Ideal::new(&c, g1.clone()).unwrap();
        assert_eq!(again.groebner().unwrap(), g1.as_slice());
    }

    #[test]
    fn normal_forms() {
        let c = ctx(&["t1", "t2", "y1", "y2"], MonomialOrder::Lex);
        let i = ideal(&c, &["t1 - y1", "t2*y1 - y2"]);
        assert!(i.normal_form(&parse("t1 - y1", &c).unwrap()).unwrap().is_zero());
        let nf = i.normal_form(&parse("t1*t2^2", &c).unwrap()).unwrap();
        assert!(nf.involves(1), "t2 survives: {nf}");

        let b = VarContext::new(["t1", "t2", "y1", "y2"], MonomialOrder::Block { front: 2 }, FieldSpec::Rationals).unwrap();
        let i = ideal(&b, &["t1 + t2 - y1", "t1*t2 - y2"]);
        assert_eq!(i.normal_form(&parse("t1^2 + t2^2", &b).unwrap()).unwrap(), parse("y1^2 - 2*y2", &b).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let c = ctx(&["t1", "t2", "y1", "y2"], MonomialOrder::Grevlex);
        let e = ideal(&c, &["t1 - y1", "t1*t2 - y2"]).eliminate_to(&["y1", "y2"]).unwrap();
        assert!(e.is_zero_ideal().unwrap());

        let c = ctx(&["t1", "y1", "y2"], MonomialOrder::Grevlex);
        let e = ideal(&c, &["y1 - t1^2", "y2 - t1^3"]).eliminate_to(&["y1", "y2"]).unwrap();
        assert_eq!(e.ctx().names(), &["y1".to_string(), "y2".to_string()]);
        let gb = e.groebner().unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], parse("y1^3 - y2^2", e.ctx()).unwrap());

        let i = ideal(&c, &["y1 - t1^2", "y2 - t1^3"]);
        let all = i.elimination(&[0, 1, 2]).unwrap();
        assert_eq!(all.groebner().unwrap(), i.groebner().unwrap());
    }

    #[test]
    fn radical_membership_examples() {
        let c = ctx(&["x1", "x2"], MonomialOrder::Grevlex);
        let i = ideal(&c, &["x1^2"]);
        assert!(i.radical_contains(&parse("x1*x2", &c).unwrap()).unwrap());
        assert!(!ideal(&c, &["x1"]).radical_contains(&parse("x2", &c).unwrap()).unwrap());
        assert!(i.radical_contains(&Polynomial::zero(&c)).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let c = ctx(&["x1", "x2"], MonomialOrder::Grevlex);
        let x1 = parse("x1", &c).unwrap();
        let s = ideal(&c, &["x1*x2"]).saturation(&x1).unwrap();
        assert!(s.same_ideal(&ideal(&c, &["x2"])).unwrap());
        let i = ideal(&c, &["x1^2 + x2", "x2^3"]);
        assert!(i.saturation(&Polynomial::one(&c)).unwrap().same_ideal(&i).unwrap());
        assert!(ideal(&c, &["x1^2"]).saturation(&x1).unwrap().is_unit().unwrap());
        assert_eq!(i.saturation(&Polynomial::zero(&c)).unwrap_err(), IdealError::SaturateByZero);
    }

    #[test]
    fn intersection_examples() {
        let c = ctx(&["x1", "x2"], MonomialOrder::Grevlex);
        let m = ideal(&c, &["x1"]).intersection(&ideal(&c, &["x2"])).unwrap();
        assert!(m.same_ideal(&ideal(&c, &["x1*x2"])).unwrap());
        let i = ideal(&c, &["x1^2 - x2", "x1*x2"]);
        assert!(i.intersection(&i).unwrap().same_ideal(&i).unwrap());
        let u = Ideal::unit(&c);
        assert!(ideal(&c, &["x1"]).intersection(&u).unwrap().same_ideal(&ideal(&c, &["x1"])).unwrap());
    }

    #[test]
    fn gcd_examples() {
        let c = ctx(&["x1", "x2", "x3"], MonomialOrder::Grevlex);
        let g = gcd_multivariate(&parse("x1*x2", &c).unwrap(), &parse("x1*x3", &c).unwrap()).unwrap();
        assert_eq!(g, parse("x1", &c).unwrap());
        let p = parse("3*x1^2*x2 - x3", &c).unwrap();
        assert_eq!(gcd_multivariate(&p, &p).unwrap(), p.monic());
        assert!(gcd_multivariate(&parse("x1", &c).unwrap(), &parse("x2", &c).unwrap()).unwrap().is_one());
        let z = Polynomial::zero(&c);
        assert_eq!(gcd_multivariate(&z, &z).unwrap_err(), IdealError::BothZero);
    }

    #[test]
    fn dimension_examples() {
        let c = ctx(&["x1", "x2"], MonomialOrder::Grevlex);
        assert_eq!(Ideal::unit(&c).dimension().unwrap(), -1);
        assert_eq!(ideal(&c, &["x1"]).dimension().unwrap(), 1);
        assert_eq!(Ideal::zero(&c).dimension().unwrap(), 2);
        let c3 = ctx(&["x1", "x2", "x3"], MonomialOrder::Grevlex);
        assert_eq!(ideal(&c3, &["x1*x2", "x1*x3"]).dimension().unwrap(), 2);
        assert_eq!(ideal(&c3, &["x1 - x2^2", "x3 - x2^3"]).dimension().unwrap(), 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c = ctx(&["a", "b", "c", "d"], MonomialOrder::Grevlex);
        let i = ideal(&c, &["a^2 + b*c - 1", "a*b - c^2", "b^3 - a + 2*c*d", "d^2 - a*b"]).with_budget(5);
        assert_eq!(i.groebner().unwrap_err(), IdealError::ResourceExhausted(5));
    }

    /// Cofactor reconstruction: `g ∈ I` whenever `g = Σ cᵢ·gᵢ`.
    fn combination(gens: &[Polynomial], cofactors: &[Polynomial]) -> Polynomial {
        gens.iter().zip(cofactors).fold(Polynomial::zero(gens[0].ctx()), |acc, (g, c)| acc.add(&g.mul(c)))
    }

    fn small_poly(c: Ctx) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..4).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|((a, b), k)| (Monomial(vec![a, b]), c.field().from_i64(k)))
                .collect();
            Polynomial::from_terms(&c, terms)
        })
    }

    fn c2() -> Ctx {
        ctx(&["x", "y"], MonomialOrder::Grevlex)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn membership_matches_cofactor_construction(
            g1 in small_poly(c2()), g2 in small_poly(c2()),
            a in small_poly(c2()), b in small_poly(c2()), junk in small_poly(c2())
        ) {
            let gens = vec![g1, g2];
            let i = Ideal::new(&c2(), gens.clone()).unwrap();
            let member = combination(&gens, &[a, b]);
            prop_assert!(i.normal_form(&member).unwrap().is_zero());
            // normal form is the same for elements congruent modulo I
            let shifted = junk.add(&member);
            prop_assert_eq!(i.normal_form(&shifted).unwrap(), i.normal_form(&junk).unwrap());
        }

        #[test]
        fn elimination_generators_use_kept_variables(g1 in small_poly(c2()), g2 in small_poly(c2())) {
            let i = Ideal::new(&c2(), vec![g1, g2]).unwrap();
            let e = i.elimination(&[1]).unwrap();
            for g in e.groebner().unwrap() {
                let back = g.embed(&c2(), &[1]);
                prop_assert!(i.contains(&back).unwrap());
            }
        }

        #[test]
        fn radical_membership_matches_power_search(g1 in small_poly(c2()), g2 in small_poly(c2()), h in small_poly(c2())) {
            let i = Ideal::new(&c2(), vec![g1, g2]).unwrap();
            let by_power = (1..=8).any(|k| i.contains(&h.pow(k)).unwrap());
            let by_rabinowitsch = i.radical_contains(&h).unwrap();
            // agreement in the direction the bounded search can certify
            prop_assert!(!by_power || by_rabinowitsch);
            if !by_rabinowitsch {
                prop_assert!(!by_power);
            }
        }

        #[test]
        fn radical_membership_finds_planted_powers(u in small_poly(c2()), v in small_poly(c2()), k in 1u64..4) {
            prop_assume!(!u.is_zero());
            let i = Ideal::new(&c2(), vec![u.pow(k), v]).unwrap();
            prop_assert!(i.radical_contains(&u).unwrap());
            prop_assert!((1..=8).any(|e| i.contains(&u.pow(e)).unwrap()));
        }
    }
}
