//! Almost-surjectivity: the closure of the complement of the range has
//! dimension at most `m − 2`.
//!
//! A Yes answer comes from the Extension Theorem. Walk a lex basis of the
//! graph ideal from the last domain variable up. A partial solution
//! extends unless every leading coefficient with respect to the next
//! variable vanishes on it. Projecting those failure sets to `y` gives
//! ideals `B_k` with the non-range contained in `⋃ V(B_k)`.
//!
//! A No answer is a pair `(p, q)` with `p(f) | q(f)` and `p ∤ q`, searched
//! among hypersurfaces of `B_k` of dimension `m − 1`.

use crate::ideal::{gcd_with_budget, Ideal};
use crate::poly::{MonomialOrder, Polynomial};

use super::{AlmostSurjWitness, Decider, DetError, PolyMap, Verdict, WitnessKind};

impl Decider {
    pub fn almost_surjectivity(&self, f: &PolyMap) -> Result<Verdict, DetError> {
        let m = f.codomain_arity();
        let closure = self.range_closure(f)?;
        if let Some(u) = closure.groebner()?.first() {
            let p = u.add(&Polynomial::one(u.ctx()));
            let witness = AlmostSurjWitness { p, q: u.clone(), kind: WitnessKind::NotDominant };
            return Ok(Verdict::No(witness));
        }

        let stages = self.extension_obstructions(f)?;
        let mut dims = Vec::with_capacity(stages.len());
        for b in &stages {
            dims.push(b.dimension()?);
        }
        let dimension = dims.iter().copied().max().unwrap_or(-1);
        let locus = self.product(f, &stages)?;
        if dimension <= m as i64 - 2 {
            return Ok(Verdict::Yes { locus, dimension });
        }

        for (b, &dim) in stages.iter().zip(&dims) {
            if dim != m as i64 - 1 {
                continue;
            }
            for p in self.candidates(b)? {
                if let Some(w) = self.divisibility_witness(f, &p)? {
                    return Ok(Verdict::No(w));
                }
            }
        }
        Ok(Verdict::Unknown { blocking: locus })
    }

    /// The ideals `B_k` in `x1…xm`, skipping stages where every partial
    /// solution extends.
    fn extension_obstructions(&self, f: &PolyMap) -> Result<Vec<Ideal>, DetError> {
        let (n, m) = (f.domain_arity(), f.codomain_arity());
        let graph = self.graph_ideal(f, None)?;
        let lex = graph.ctx().with_order(MonomialOrder::Lex);
        let gens = graph.generators().iter().map(|g| g.with_ctx(&lex)).collect();
        let lex_ideal = self.ideal(&lex, gens)?;
        let gb = lex_ideal.groebner()?;
        let xctx = f.image_ctx(m);
        let ys: Vec<usize> = (n..n + m).collect();
        let mut out = Vec::new();
        for k in 0..n {
            let upper: Vec<&Polynomial> = gb.iter().filter(|g| (0..k).all(|j| !g.involves(j))).collect();
            let leading: Vec<Polynomial> = upper
                .iter()
                .filter(|g| g.involves(k))
                .map(|g| g.coefficients_in(k).pop().expect("positive degree"))
                .collect();
            if leading.is_empty() || leading.iter().any(Polynomial::is_constant) {
                continue;
            }
            let mut gens: Vec<Polynomial> = upper.iter().filter(|g| !g.involves(k)).map(|g| (*g).clone()).collect();
            gens.extend(leading);
            let projected = self.ideal(&lex, gens)?.elimination(&ys)?;
            let moved = projected.groebner()?.iter().map(|g| g.with_ctx(&xctx)).collect();
            out.push(self.ideal(&xctx, moved)?);
        }
        Ok(out)
    }

    /// Product ideal; the unit ideal for an empty list.
    fn product(&self, f: &PolyMap, ideals: &[Ideal]) -> Result<Ideal, DetError> {
        let xctx = f.image_ctx(f.codomain_arity());
        let mut gens = vec![Polynomial::one(&xctx)];
        for b in ideals {
            let bg = b.groebner()?;
            let bg: Vec<Polynomial> = if bg.is_empty() { vec![Polynomial::zero(&xctx)] } else { bg.to_vec() };
            gens = gens.iter().flat_map(|a| bg.iter().map(move |c| a.mul(c))).collect();
        }
        self.ideal(&xctx, gens)
    }

    /// Nonconstant basis elements of `b`, preceded by their gcd.
    fn candidates(&self, b: &Ideal) -> Result<Vec<Polynomial>, DetError> {
        let gb = b.groebner()?;
        let mut out: Vec<Polynomial> = Vec::new();
        if let Some((first, rest)) = gb.split_first() {
            let mut g = first.clone();
            for h in rest {
                g = gcd_with_budget(&g, h, self.opts.step_budget)?;
            }
            if !g.is_constant() {
                out.push(g);
            }
        }
        for h in gb {
            if !h.is_constant() && !out.contains(h) {
                out.push(h.clone());
            }
        }
        Ok(out)
    }

    /// Looks for `q` vanishing on `f(V(p(f)))` but not on `V(p)`, then for a
    /// power `q^ν` with `p(f) | q(f)^ν`.
    fn divisibility_witness(&self, f: &PolyMap, p: &Polynomial) -> Result<Option<AlmostSurjWitness>, DetError> {
        let pf = f.apply(p)?;
        if pf.is_zero() {
            return Ok(None);
        }
        let graph = self.graph_ideal(f, None)?;
        let n = f.domain_arity();
        let tmap: Vec<usize> = (0..n).collect();
        let mut gens = graph.generators().to_vec();
        gens.push(pf.embed(graph.ctx(), &tmap));
        let restricted = self.ideal(graph.ctx(), gens)?;
        let j = self.project(f, &restricted, f.codomain_arity())?;
        let hyper = self.ideal(p.ctx(), vec![p.clone()])?;
        for q in j.groebner()? {
            if hyper.radical_contains(q)? {
                continue;
            }
            let qf = f.apply(q)?;
            let mut acc = qf.clone();
            let mut qpow = q.clone();
            for _ in 0..self.opts.power_cap {
                if acc.exact_divide(&pf)?.is_some() {
                    let w = AlmostSurjWitness { p: p.clone(), q: qpow, kind: WitnessKind::Divisibility };
                    return Ok(Some(w));
                }
                acc = acc.mul(&qf);
                qpow = qpow.mul(q);
            }
        }
        Ok(None)
    }
}
