//! Acceptance suite. Every criterion is checked by exact equality and gets
//! one printed line; the process exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use ihtheta::exact::{int, LinearOperator, Rational};
use ihtheta::jacobian::{AbelJacobi, ExteriorAlgebra};
use ihtheta::sym::{SymClass, SymMonomial, SymRing};
use ihtheta::tensor::{representative_word, symmetrize, TensorClass};
use ihtheta::theta::{binomial_identity_sides, lefschetz_balance, strata_report, ThetaModel};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut Models) -> Outcome>;

struct Models {
    models: BTreeMap<u32, ThetaModel>,
    direct: BTreeMap<u32, LinearOperator>,
    formula: BTreeMap<u32, LinearOperator>,
}

impl Models {
    fn new() -> Self {
        Models {
            models: BTreeMap::new(),
            direct: BTreeMap::new(),
            formula: BTreeMap::new(),
        }
    }

    fn model(&mut self, g: u32) -> Result<&ThetaModel, String> {
        if let std::collections::btree_map::Entry::Vacant(e) = self.models.entry(g) {
            let m = ThetaModel::new(g).map_err(|e| format!("g={g}: {e}"))?;
            e.insert(m);
        }
        Ok(&self.models[&g])
    }

    fn direct(&mut self, g: u32) -> Result<LinearOperator, String> {
        if let Some(op) = self.direct.get(&g) {
            return Ok(op.clone());
        }
        let op = self
            .model(g)?
            .iota_direct()
            .map_err(|e| format!("g={g} direct ι: {e}"))?;
        self.direct.insert(g, op.clone());
        Ok(op)
    }

    fn formula(&mut self, g: u32) -> Result<LinearOperator, String> {
        if let Some(op) = self.formula.get(&g) {
            return Ok(op.clone());
        }
        let op = self
            .model(g)?
            .iota_formula()
            .map_err(|e| format!("g={g} formula ι: {e}"))?;
        self.formula.insert(g, op.clone());
        Ok(op)
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn supertrace(ms: &mut Models) -> Outcome {
    let mut seen = Vec::new();
    for (g, expected) in [(3, 28), (4, 120), (5, 496)] {
        let s = ms.direct(g)?.supertrace().map_err(|e| e.to_string())?;
        check(s == int(expected), || format!("g={g}: STr = {s}, expected {expected}"))?;
        seen.push(format!("g={g}: {s}"));
    }
    Ok(seen.join(", "))
}

fn lefschetz(ms: &mut Models) -> Outcome {
    let mut seen = Vec::new();
    for g in 3..=5 {
        let s = ms.direct(g)?.supertrace().map_err(|e| e.to_string())?;
        let b = lefschetz_balance(g, &s).map_err(|e| e.to_string())?;
        let total = BigInt::one() << (2 * g);
        check(&b.counts.odd + &b.counts.even == total, || {
            format!("g={g}: odd + even != 2^(2g)")
        })?;
        check(b.holds, || {
            format!("g={g}: fixed-point sum {} vs STr {s}", b.fixed_point_sum)
        })?;
        seen.push(format!("g={g}: {} odd", b.counts.odd));
    }
    Ok(seen.join(", "))
}

fn involution(ms: &mut Models) -> Outcome {
    for g in 1..=5 {
        let direct = ms.direct(g)?;
        let formula = ms.formula(g)?;
        for (name, op) in [("direct", &direct), ("formula", &formula)] {
            let sq = op.compose(op).map_err(|e| e.to_string())?;
            check(sq.is_identity(), || format!("g={g}: {name} ι² != id"))?;
        }
        for p in 0..=2 * (g as i32 - 1) {
            check(direct.block(p) == formula.block(p), || {
                format!("g={g}: constructions differ in degree {p}")
            })?;
        }
    }
    Ok("g=1..5, both constructions, entry-by-entry agreement".into())
}

fn eta_powers(ms: &mut Models) -> Outcome {
    let mut steps = 0;
    for g in 1..=5 {
        let m = ms.model(g)?;
        let kappa = m.canonical_kappa().map_err(|e| e.to_string())?;
        let rho = m.rr_correspondence(&kappa).map_err(|e| e.to_string())?;
        let r = m.ring().clone();
        let mut previous: Option<SymClass> = None;
        for k in 0..g {
            let eta_k = r.pow(&r.eta(), k).map_err(|e| e.to_string())?;
            let acted = m.correspondence_action(&rho, &eta_k).map_err(|e| e.to_string())?;
            let closed = m.rr_eta_power(k).map_err(|e| e.to_string())?;
            check(acted == closed, || {
                format!("g={g} m={k}: action and closed form differ")
            })?;
            // ρ(η^m) = φ*(θ^m/m!) - η·ρ(η^{m-1})
            if let Some(prev) = previous {
                let theta_k = m.phi(&m.pic().theta_divided_power(k));
                let rhs = theta_k
                    .sub(&r.mul(&r.eta(), &prev).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                check(acted == rhs, || format!("g={g} m={k}: recursion fails"))?;
            } else {
                check(acted == r.one(), || format!("g={g}: ρ(1) != 1"))?;
            }
            steps += 1;
            previous = Some(acted);
        }
    }
    Ok(format!("{steps} (g, m) pairs, recursion at every step"))
}

fn poincare() -> Outcome {
    let mut cases = 0;
    for g in 1..=5u32 {
        let pic = Arc::new(ExteriorAlgebra::new(g).map_err(|e| e.to_string())?);
        for d in 0..=g {
            let ring = Arc::new(SymRing::new(g, d).map_err(|e| e.to_string())?);
            let aj = AbelJacobi::new(pic.clone(), ring.clone()).map_err(|e| e.to_string())?;
            // m = g - d + i
            for i in 0..=d {
                let eta_i = ring.pow(&ring.eta(), i).map_err(|e| e.to_string())?;
                let pushed = aj.pushforward(&eta_i).map_err(|e| e.to_string())?;
                let m = g - d + i;
                check(pushed == pic.theta_divided_power(m), || {
                    format!("g={g} d={d} i={i}: φ_*(η^i) != θ^{m}/{m}!")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} admissible (g, d, i) cases"))
}

fn lemma_calc() -> Outcome {
    let start = Instant::now();
    for g in 1..=200 {
        let (lhs, rhs) = binomial_identity_sides(g).map_err(|e| e.to_string())?;
        check(lhs == rhs, || format!("g={g}: {lhs} != {rhs}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("g=1..200 in {elapsed:?}"))
}

fn filtration(ms: &mut Models) -> Outcome {
    for g in 3..=5 {
        let iota = ms.direct(g)?;
        let report = ms.model(g)?.filtration_check(&iota).map_err(|e| e.to_string())?;
        check(report.holds, || format!("g={g}: {:?}", report.counterexample))?;
    }
    Ok("g=3,4,5".into())
}

fn nonmultiplicative(ms: &mut Models) -> Outcome {
    let mut seen = Vec::new();
    for g in [4, 6] {
        let iota = ms.formula(g)?;
        let m = ms.model(g)?;
        let w = m
            .nonmultiplicativity_witness(&iota)
            .map_err(|e| format!("g={g}: {e}"))?;
        let minus_w = w.w.scaled(&-Rational::one());
        check(w.iota_w == minus_w, || format!("g={g}: ι(w) != -w"))?;
        check(!w.w_power.is_zero(), || format!("g={g}: w^(g-1) = 0"))?;
        check(w.iota_w_power == w.w_power, || format!("g={g}: ι(w^(g-1)) != w^(g-1)"))?;
        let sign = if (g - 1) % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        check(w.iota_w_power != w.w_power.scaled(&sign), || {
            format!("g={g}: ι(w^(g-1)) = (-1)^(g-1) w^(g-1)")
        })?;
        check(!w.power_integral.is_zero(), || format!("g={g}: ∫w^(g-1) = 0"))?;
        seen.push(format!(
            "g={g}: w = {}η {:+}φ*θ, ∫w^{} = {}",
            w.eta_coefficient,
            w.theta_coefficient,
            g - 1,
            w.power_integral
        ));
    }
    Ok(seen.join("; "))
}

fn to_tensor(a: &SymClass) -> TensorClass {
    let mut out = TensorClass::zero();
    for (m, q) in a.terms() {
        let w = representative_word(&m.odd_indices(), m.tops() as usize, a.power() as usize);
        out.add(&symmetrize(&w), q);
    }
    out
}

fn oracle() -> Outcome {
    let mut pairs = 0usize;
    for g in 1..=3u32 {
        for d in 0..=3u32 {
            let r = SymRing::new(g, d).map_err(|e| e.to_string())?;
            let all: Vec<SymMonomial> = (0..=2 * d).flat_map(|k| r.basis(k).to_vec()).collect();
            let lifted: Vec<TensorClass> = all
                .iter()
                .map(|m| to_tensor(&SymClass::monomial(g, d, *m, int(1))))
                .collect();
            for (a, ta) in all.iter().zip(&lifted) {
                for (b, tb) in all.iter().zip(&lifted) {
                    let prod = SymClass::from_terms(g, d, r.product(a, b).into_iter().collect());
                    let expected = ta.mul(g as u8, tb).map_err(|e| e.to_string())?;
                    check(to_tensor(&prod) == expected, || format!("g={g} d={d}: {a} * {b}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} basis pairs"))
}

fn strata() -> Outcome {
    for g in 3..=50 {
        let report = strata_report(g).map_err(|e| format!("g={g}: {e}"))?;
        let v = report.violations();
        check(v.is_empty(), || format!("g={g}: {}", v.join("; ")))?;
        let z0 = report.rows[0].zr_dim;
        check(z0 == Some(g as i64), || format!("g={g}: dim Z^0 = {z0:?}"))?;
    }
    Ok("g=3..50".into())
}

fn main() -> ExitCode {
    let mut ms = Models::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("supertrace", Box::new(supertrace)),
        ("lefschetz balance", Box::new(lefschetz)),
        ("involution law", Box::new(involution)),
        ("eta-power formula and recursion", Box::new(eta_powers)),
        ("poincare formula", Box::new(|_| poincare())),
        ("binomial identity", Box::new(|_| lemma_calc())),
        ("filtration", Box::new(filtration)),
        ("non-multiplicativity", Box::new(nonmultiplicative)),
        ("oracle equivalence", Box::new(|_| oracle())),
        ("strata arithmetic", Box::new(|_| strata())),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut ms);
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{elapsed:.2?}]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{elapsed:.2?}]", n + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria FAILED");
        ExitCode::FAILURE
    }
}
