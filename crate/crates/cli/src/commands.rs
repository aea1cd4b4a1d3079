use std::time::Instant;

use detpoly::detcore::{
    divides_after_composition, Certificate, Decider, DetError, DeterminednessResult, Options, PolyMap, Verdict,
    WitnessKind,
};
use detpoly::expr::{parse, parse_list, ParseError};
use detpoly::ideal::{Ideal, IdealError, DEFAULT_STEP_BUDGET};
use detpoly::{Ctx, FieldSpec, MonomialOrder, Polynomial, VarContext};
use serde_json::{json, Value};

use crate::report::{ExitCode, Report};
use crate::{Command, Order, Query};

struct Outcome {
    verdict: String,
    certificate: Option<Value>,
    verified: Option<bool>,
    code: ExitCode,
}

impl Outcome {
    fn decided(verdict: impl Into<String>, certificate: Option<Value>, verified: Option<bool>) -> Self {
        Outcome { verdict: verdict.into(), certificate, verified, code: ExitCode::Decided }
    }
}

struct Failure {
    kind: String,
    message: String,
    code: ExitCode,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { kind: "ParseError".into(), message: message.into(), code: ExitCode::Parse }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::parse(e.to_string())
    }
}

impl From<DetError> for Failure {
    fn from(e: DetError) -> Self {
        let code = match &e {
            DetError::ResourceExhausted(_) => ExitCode::Exhausted,
            DetError::VerificationFailed(_) => ExitCode::Internal,
            _ => ExitCode::Precondition,
        };
        let kind = format!("{e:?}").split(['(', ' ']).next().unwrap_or("Error").to_string();
        Failure { kind, message: e.to_string(), code }
    }
}

impl From<IdealError> for Failure {
    fn from(e: IdealError) -> Self {
        DetError::from(e).into()
    }
}

pub fn execute(cmd: Command, q: &Query) -> Report {
    let start = Instant::now();
    let outcome = dispatch(cmd, q);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let mut report = Report {
        command: cmd.name().to_string(),
        inputs: inputs(q),
        verdict: None,
        certificate: None,
        verified: None,
        elapsed_ms,
        error: None,
        code: ExitCode::Decided,
    };
    match outcome {
        Ok(o) => {
            report.code = if o.verified == Some(false) { ExitCode::Internal } else { o.code };
            if o.verified == Some(false) {
                report.error = Some(("VerificationFailed".into(), "certificate failed re-verification".into()));
            }
            report.verdict = Some(o.verdict);
            report.certificate = o.certificate;
            report.verified = o.verified;
        }
        Err(f) => {
            report.code = f.code;
            report.error = Some((f.kind, f.message));
        }
    }
    report
}

fn inputs(q: &Query) -> Value {
    json!({
        "char": q.characteristic,
        "vars": q.vars,
        "map": q.map,
        "poly": q.poly,
        "p": q.p,
        "q": q.q,
        "ideal": q.ideal,
        "order": match q.order { Order::Grevlex => "grevlex", Order::Lex => "lex" },
    })
}

/// Parsed inputs shared by the map-based subcommands.
struct Setup {
    decider: Decider,
    ctx: Ctx,
    f: Option<PolyMap>,
}

impl Setup {
    fn new(q: &Query) -> Result<Self, Failure> {
        let field = FieldSpec::from_characteristic(q.characteristic)
            .map_err(|e| Failure::parse(format!("--char {}: {e}", q.characteristic)))?;
        if q.vars.is_empty() {
            return Err(Failure::parse("--vars is required"));
        }
        let order = match q.order {
            Order::Grevlex => MonomialOrder::Grevlex,
            Order::Lex => MonomialOrder::Lex,
        };
        let ctx = VarContext::new(q.vars.iter().map(|v| v.trim().to_string()), order, field)
            .map_err(|e| Failure::parse(format!("--vars: {e}")))?;
        let f = match &q.map {
            Some(text) => {
                let comps = parse_list(text, &ctx)?;
                Some(PolyMap::new(comps)?)
            }
            None => None,
        };
        let defaults = Options::default();
        let decider = Decider::new(Options {
            step_budget: q.step_budget.unwrap_or(DEFAULT_STEP_BUDGET),
            nu_cap: q.nu_cap,
            power_cap: q.power_cap.unwrap_or(defaults.power_cap),
        });
        Ok(Setup { decider, ctx, f })
    }

    fn map(&self) -> Result<&PolyMap, Failure> {
        self.f.as_ref().ok_or_else(|| Failure::parse("--map is required"))
    }

    fn g(&self, q: &Query) -> Result<Polynomial, Failure> {
        let text = q.poly.as_deref().ok_or_else(|| Failure::parse("--poly is required"))?;
        Ok(parse(text, &self.ctx)?)
    }

    /// Parses `--p`/`--q` in the image variables `x1..xm`.
    fn image_poly(&self, text: Option<&str>, flag: &str) -> Result<Polynomial, Failure> {
        let f = self.map()?;
        let text = text.ok_or_else(|| Failure::parse(format!("--{flag} is required")))?;
        Ok(parse(text, &f.image_ctx(f.codomain_arity()))?)
    }
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn dispatch(cmd: Command, q: &Query) -> Result<Outcome, Failure> {
    let s = Setup::new(q)?;
    let d = &s.decider;
    match cmd {
        Command::Indep => {
            let f = s.map()?;
            let independent = d.algebraically_independent(f)?;
            let closure = d.range_closure(f)?;
            let annihilators = closure.groebner()?.to_vec();
            let verified = if independent {
                annihilators.is_empty()
            } else {
                !annihilators.is_empty() && all_vanish(f, &annihilators)?
            };
            let verdict = if independent { "independent" } else { "dependent" };
            Ok(Outcome::decided(verdict, Some(json!({ "annihilators": strings(&annihilators) })), Some(verified)))
        }
        Command::RangeClosure => {
            let f = s.map()?;
            let gens = d.range_closure(f)?.groebner()?.to_vec();
            let verdict = if gens.is_empty() { "dominant" } else { "not dominant" };
            let verified = all_vanish(f, &gens)?;
            Ok(Outcome::decided(verdict, Some(json!({ "generators": strings(&gens) })), Some(verified)))
        }
        Command::IrrClosure => {
            let (f, g) = (s.map()?, s.g(q)?);
            let cert = d.irr_of_closure(f, &g)?;
            let verified = cert.verify(f, &g)?;
            let verdict = if cert.d == 1 { "degree one" } else { "degree above one" };
            Ok(Outcome::decided(verdict, Some(json!({ "q": cert.q.to_string(), "d": cert.d })), Some(verified)))
        }
        Command::MemberRing => {
            let (f, g) = (s.map()?, s.g(q)?);
            Ok(match d.subalgebra_membership(f, &g)? {
                Some(p) => {
                    let verified = f.apply(&p)? == g;
                    Outcome::decided("member", Some(json!({ "p": p.to_string() })), Some(verified))
                }
                None => Outcome::decided("not member", None, None),
            })
        }
        Command::MemberField => {
            let (f, g) = (s.map()?, s.g(q)?);
            Ok(match d.rational_membership(f, &g)? {
                Some(rep) => {
                    let verified = rep.verify(f, &g)?;
                    let cert = json!({ "r": rep.r.to_string(), "s": rep.s.to_string() });
                    Outcome::decided("member", Some(cert), Some(verified))
                }
                None => {
                    let cert = d.irr_of_closure(f, &g)?;
                    let verified = cert.verify(f, &g)?;
                    let body = json!({ "q": cert.q.to_string(), "d": cert.d });
                    Outcome::decided("not member", Some(body), Some(verified))
                }
            })
        }
        Command::Radchi => {
            let (f, g) = (s.map()?, s.g(q)?);
            Ok(match d.radchi_membership(f, &g, q.nu_cap)? {
                Some(dec) => {
                    let verified = dec.verify(f, &g)?;
                    let cert = json!({ "p": dec.p.to_string(), "nu": dec.nu });
                    Outcome::decided("member", Some(cert), Some(verified))
                }
                None => Outcome::decided("not member", None, None),
            })
        }
        Command::Determined => {
            let (f, g) = (s.map()?, s.g(q)?);
            let r = d.is_determined(f, &g)?;
            determinedness(d, f, &g, r)
        }
        Command::DeterminedThm => {
            let (f, g) = (s.map()?, s.g(q)?);
            let r = d.determined_theorem_route(f, &g)?;
            determinedness(d, f, &g, r)
        }
        Command::AlmostSurj => {
            let f = s.map()?;
            let v = d.almost_surjectivity(f)?;
            let verified = v.verify(d, f)?;
            let cert = match &v {
                Verdict::Yes { locus, dimension } => json!({
                    "locus": strings(locus.generators()),
                    "dimension": dimension,
                }),
                Verdict::No(w) => json!({
                    "p": w.p.to_string(),
                    "q": w.q.to_string(),
                    "kind": match w.kind {
                        WitnessKind::NotDominant => "NotDominant",
                        WitnessKind::Divisibility => "Divisibility",
                    },
                }),
                Verdict::Unknown { blocking } => json!({ "blocking": strings(blocking.generators()) }),
            };
            let mut out = Outcome::decided(v.value().to_string(), Some(cert), Some(verified));
            if matches!(v, Verdict::Unknown { .. }) {
                out.code = ExitCode::Unknown;
                out.verified = None;
            }
            Ok(out)
        }
        Command::Witness => {
            let f = s.map()?;
            let p = s.image_poly(q.p.as_deref(), "p")?;
            let qq = s.image_poly(q.q.as_deref(), "q")?;
            let b = d.non_almost_surjective_witness(f, &p, &qq)?;
            let verified = d.is_determined(f, &b)?.determined && d.subalgebra_membership(f, &b)?.is_none();
            let cert = json!({ "b": b.to_string() });
            Ok(Outcome::decided("determined and not in k[f]", Some(cert), Some(verified)))
        }
        Command::Divides => {
            let f = s.map()?;
            let p = s.image_poly(q.p.as_deref(), "p")?;
            let qq = s.image_poly(q.q.as_deref(), "q")?;
            if !divides_after_composition(&p, &qq, f)? {
                return Ok(Outcome::decided("does not divide", None, None));
            }
            let (pf, qf) = (f.apply(&p)?, f.apply(&qq)?);
            if pf.is_zero() {
                return Ok(Outcome::decided("divides", Some(json!({ "quotient": null })), Some(qf.is_zero())));
            }
            let quotient = qf.exact_divide(&pf).map_err(DetError::from)?.expect("checked above");
            let verified = quotient.mul(&pf) == qf;
            Ok(Outcome::decided("divides", Some(json!({ "quotient": quotient.to_string() })), Some(verified)))
        }
        Command::Decompose => {
            let (f, g) = (s.map()?, s.g(q)?);
            let dec = d.decompose(f, &g, q.assume_surjective)?;
            let verified = dec.verify(f, &g)?;
            let cert = json!({ "p": dec.p.to_string(), "nu": dec.nu });
            Ok(Outcome::decided("decomposed", Some(cert), Some(verified)))
        }
        Command::Dim => {
            let text = q.ideal.as_deref().ok_or_else(|| Failure::parse("--ideal is required"))?;
            let gens = parse_list(text, &s.ctx)?;
            let ideal = Ideal::new(&s.ctx, gens)?.with_budget(d.options().step_budget);
            let dim = ideal.dimension()?;
            let gb = strings(ideal.groebner()?);
            Ok(Outcome::decided(dim.to_string(), Some(json!({ "dimension": dim, "groebner": gb })), None))
        }
    }
}

fn all_vanish(f: &PolyMap, polys: &[Polynomial]) -> Result<bool, Failure> {
    for u in polys {
        if !f.apply(u)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn determinedness(d: &Decider, f: &PolyMap, g: &Polynomial, r: DeterminednessResult) -> Result<Outcome, Failure> {
    let verified = r.verify(d, f, g)?;
    let kind = r.certificate.kind();
    let cert = match &r.certificate {
        Certificate::InRing(p) => json!({ "kind": kind, "p": p.to_string() }),
        Certificate::RadChi { p, nu } => json!({ "kind": kind, "p": p.to_string(), "nu": nu }),
        Certificate::RationalOnly(rep) => json!({ "kind": kind, "r": rep.r.to_string(), "s": rep.s.to_string() }),
        Certificate::UnitIdeal | Certificate::Transcendental => json!({ "kind": kind }),
        Certificate::CounterexampleIdeal(j) => json!({ "kind": kind, "ideal": strings(j.groebner()?) }),
        Certificate::NotInRing { normal_form, nu } => {
            json!({ "kind": kind, "normal_form": normal_form.to_string(), "nu": nu })
        }
        Certificate::MultiSheeted { closure, nu } => {
            json!({ "kind": kind, "q": closure.q.to_string(), "d": closure.d, "nu": nu })
        }
    };
    let verdict = if r.determined { "determined" } else { "not determined" };
    Ok(Outcome::decided(verdict, Some(cert), Some(verified)))
}
