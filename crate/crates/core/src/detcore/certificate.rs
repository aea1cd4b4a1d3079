//! Result types. Each carries a `verify` method that re-checks the claim
//! with exact polynomial identities, independently of how it was found.

use std::fmt;

use crate::ideal::Ideal;
use crate::poly::Polynomial;

use super::{divides_after_composition, Decider, DetError, PolyMap};

/// Monic generator `q(x₁, …, x_{m+1})` of the closure of
/// `{(f(a), g(a))}` together with `d = deg_{x_{m+1}} q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub q: Polynomial,
    pub d: u32,
    pub m: usize,
}

impl ClosureCertificate {
    /// `q` is monic of degree `d ≥ 1` in the last variable and vanishes on
    /// `(f, g)`.
    pub fn verify(&self, f: &PolyMap, g: &Polynomial) -> Result<bool, DetError> {
        if self.d == 0 || self.q.degree_in(self.m) != Some(self.d) {
            return Ok(false);
        }
        if !self.q.leading_coeff().is_some_and(|c| c.is_one()) {
            return Ok(false);
        }
        let mut args = f.components().to_vec();
        args.push(g.clone());
        Ok(self.q.compose(&args)?.is_zero())
    }
}

/// `g = r(f) / s(f)` with `s` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRep {
    pub r: Polynomial,
    pub s: Polynomial,
}

impl RationalRep {
    pub fn verify(&self, f: &PolyMap, g: &Polynomial) -> Result<bool, DetError> {
        let sf = f.apply(&self.s)?;
        Ok(!sf.is_zero() && g.mul(&sf) == f.apply(&self.r)?)
    }
}

/// `g^(χ^ν) = p(f)`; in characteristic zero only `ν = 0` occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub p: Polynomial,
    pub nu: u32,
}

impl Decomposition {
    pub fn verify(&self, f: &PolyMap, g: &Polynomial) -> Result<bool, DetError> {
        Ok(f.apply(&self.p)? == chi_power(g, self.nu))
    }
}

pub(crate) fn chi_power(g: &Polynomial, nu: u32) -> Polynomial {
    let chi = g.field().characteristic();
    if nu == 0 || chi == 0 {
        return g.clone();
    }
    (0..nu).fold(g.clone(), |h, _| h.pow(chi))
}

#[derive(Debug, Clone)]
pub enum Certificate {
    /// `g = p(f)`.
    InRing(Polynomial),
    /// `g^(χ^ν) = p(f)`.
    RadChi { p: Polynomial, nu: u32 },
    /// `g·s(f) = r(f)` and no polynomial representation was found.
    RationalOnly(RationalRep),
    /// The double-point ideal is the unit ideal; no representation found.
    UnitIdeal,
    /// Proper double-point ideal: its zeros over the closure are pairs
    /// `(s, u)` with `f(s) = f(u)` and `g(s) ≠ g(u)`.
    CounterexampleIdeal(Ideal),
    /// Normal form of `g^(χ^ν)` modulo the graph ideal still involves the
    /// domain variables.
    NotInRing { normal_form: Polynomial, nu: u32 },
    /// After the Frobenius recursion the closure generator is separable of
    /// degree `d > 1` in the last variable.
    MultiSheeted { closure: ClosureCertificate, nu: u32 },
    /// `g` is transcendental over `k(f)`.
    Transcendental,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::InRing(_) => "InRing",
            Certificate::RadChi { .. } => "RadChi",
            Certificate::RationalOnly(_) => "RationalOnly",
            Certificate::UnitIdeal => "UnitIdeal",
            Certificate::CounterexampleIdeal(_) => "CounterexampleIdeal",
            Certificate::NotInRing { .. } => "NotInRing",
            Certificate::MultiSheeted { .. } => "MultiSheeted",
            Certificate::Transcendental => "Transcendental",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DeterminednessResult {
    pub determined: bool,
    pub certificate: Certificate,
}

impl DeterminednessResult {
    pub fn verify(&self, decider: &Decider, f: &PolyMap, g: &Polynomial) -> Result<bool, DetError> {
        let ok = match &self.certificate {
            Certificate::InRing(p) => self.determined && f.apply(p)? == *g,
            Certificate::RadChi { p, nu } => {
                self.determined && Decomposition { p: p.clone(), nu: *nu }.verify(f, g)?
            }
            Certificate::RationalOnly(rep) => {
                self.determined && rep.verify(f, g)? && decider.double_point_ideal(f, g)?.is_unit()?
            }
            Certificate::UnitIdeal => self.determined && decider.double_point_ideal(f, g)?.is_unit()?,
            Certificate::CounterexampleIdeal(j) => {
                !self.determined && !j.is_unit()? && j.same_ideal(&decider.double_point_ideal(f, g)?)?
            }
            Certificate::NotInRing { normal_form, nu } => {
                let h = chi_power(g, *nu);
                !self.determined
                    && decider.ring_normal_form(f, &h)? == *normal_form
                    && normal_form.support()[..f.domain_arity()].iter().any(|&u| u)
            }
            Certificate::MultiSheeted { closure, nu } => {
                let h = chi_power(g, *nu);
                !self.determined
                    && closure.d > 1
                    && closure.verify(f, &h)?
                    && !closure.q.partial_derivative(closure.m).is_zero()
            }
            Certificate::Transcendental => {
                !self.determined
                    && matches!(decider.irr_of_closure(f, g), Err(DetError::TranscendentalOverImage))
            }
        };
        Ok(ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `q` vanishes on the image, so `p = q + 1` composes to `1`.
    NotDominant,
    /// A genuine divisibility `p(f) | q(f)` with `p ∤ q`.
    Divisibility,
}

/// `p(f) | q(f)` while `p ∤ q`: a violation of almost-surjectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostSurjWitness {
    pub p: Polynomial,
    pub q: Polynomial,
    pub kind: WitnessKind,
}

impl AlmostSurjWitness {
    pub fn verify(&self, f: &PolyMap) -> Result<bool, DetError> {
        Ok(divides_after_composition(&self.p, &self.q, f)? && self.q.exact_divide(&self.p)?.is_none())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictValue {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictValue::Yes => "Yes",
            VerdictValue::No => "No",
            VerdictValue::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// Three-valued almost-surjectivity answer.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// Every point outside the range lies in `V(locus)`, of the given
    /// dimension (−1 when empty).
    Yes { locus: Ideal, dimension: i64 },
    No(AlmostSurjWitness),
    /// No decision; `blocking` is the overapproximation that was too big.
    Unknown { blocking: Ideal },
}

impl Verdict {
    pub fn value(&self) -> VerdictValue {
        match self {
            Verdict::Yes { .. } => VerdictValue::Yes,
            Verdict::No(_) => VerdictValue::No,
            Verdict::Unknown { .. } => VerdictValue::Unknown,
        }
    }

    /// Yes: the map is dominant and the locus has dimension at most
    /// `m − 2`. No: the witness checks out. Unknown carries no claim.
    pub fn verify(&self, decider: &Decider, f: &PolyMap) -> Result<bool, DetError> {
        match self {
            Verdict::Yes { locus, dimension } => {
                let dim = locus.dimension()?;
                Ok(dim == *dimension
                    && dim <= f.codomain_arity() as i64 - 2
                    && decider.range_closure(f)?.is_zero_ideal()?)
            }
            Verdict::No(w) => w.verify(f),
            Verdict::Unknown { .. } => Ok(true),
        }
    }
}
