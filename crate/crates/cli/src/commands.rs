//! The four subcommands, each producing a [`ReportDocument`].

use std::cell::OnceCell;

use ihtheta::exact::{format_rational, LinearOperator};
use ihtheta::sym::{betti, SymRing};
use ihtheta::theta::{
    binomial_identity_sides, lefschetz_balance, strata_report, supertrace_closed_form, theta_char_counts, ThetaModel,
};
use ihtheta::Error;

use crate::cache::TableCache;
use crate::report::{ReportDocument, Status, Verdict};

pub const HYPOTHESES_HOLD: &str = "non-hyperelliptic curve of genus g >= 3";
pub const HYPOTHESES_OUTSIDE: &str = "outside the non-hyperelliptic g >= 3 hypotheses";
pub const HYPOTHESES_NONE: &str = "none required";

pub fn hypotheses_label(g: u32) -> &'static str {
    if g >= 3 {
        HYPOTHESES_HOLD
    } else {
        HYPOTHESES_OUTSIDE
    }
}

/// Exit codes: 1 for a failed identity, 2 for bad arguments, 3 for a genus
/// above its budget.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GenusTooSmall { .. } | Error::OutOfRange { .. } | Error::ZeroPower => CliError::Usage(e.to_string()),
            Error::GenusTooLarge { .. } => CliError::Budget(e.to_string()),
            other => CliError::Check(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub direct: u32,
    pub formula: u32,
    pub closed_form: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            direct: 5,
            formula: 8,
            closed_form: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Formula,
    Both,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Formula => "formula",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Traces,
    Lefschetz,
    Filtration,
    Calc,
    Strata,
    Nonmult,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Traces,
        Suite::Lefschetz,
        Suite::Filtration,
        Suite::Calc,
        Suite::Strata,
        Suite::Nonmult,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Traces => "traces",
            Suite::Lefschetz => "lefschetz",
            Suite::Filtration => "filtration",
            Suite::Calc => "calc",
            Suite::Strata => "strata",
            Suite::Nonmult => "nonmult",
        }
    }

    fn needs_iota(self) -> bool {
        !matches!(self, Suite::Calc | Suite::Strata)
    }
}

pub struct Context {
    pub budgets: Budgets,
    pub cache: Option<TableCache>,
}

impl Context {
    fn require_genus(&self, g: u32) -> Result<(), CliError> {
        if g == 0 {
            return Err(CliError::Usage("--genus must be at least 1".into()));
        }
        Ok(())
    }

    fn budget(&self, g: u32, max: u32, what: &str, hint: &str) -> Result<(), CliError> {
        if g > max {
            return Err(CliError::Budget(format!(
                "genus {g} exceeds the {what} budget of {max}{hint}"
            )));
        }
        Ok(())
    }

    /// `S^{g-1}` with a cached product table when the ring is small enough.
    fn model(&self, g: u32) -> Result<ThetaModel, CliError> {
        let ring = SymRing::new(g, g - 1)?;
        let ring = match &self.cache {
            Some(cache) if TableCache::is_cacheable(g, g - 1) => ring.with_table(cache.get_or_derive(g, g - 1).0)?,
            _ => ring,
        };
        Ok(ThetaModel::with_ring(ring)?)
    }
}

fn trace_rows(model: &ThetaModel, iota: &LinearOperator) -> Result<Vec<Vec<String>>, CliError> {
    let betti = model.ring().betti_numbers();
    let mut rows = Vec::new();
    for (p, b) in betti.iter().enumerate() {
        let t = iota.trace(p as i32).map_err(Error::from)?;
        rows.push(vec![p.to_string(), b.to_string(), format_rational(&t)]);
    }
    Ok(rows)
}

fn involution_verdict(name: &str, iota: &LinearOperator) -> Result<Verdict, CliError> {
    let sq = iota.compose(iota).map_err(Error::from)?;
    Ok(Verdict::from_bool(
        name,
        sq.is_identity(),
        if sq.is_identity() {
            "ι² = id exactly"
        } else {
            "ι² differs from the identity"
        },
    ))
}

fn supertrace_verdict(g: u32, iota: &LinearOperator) -> Result<Verdict, CliError> {
    let s = iota.supertrace().map_err(Error::from)?;
    let expected = supertrace_closed_form(g)?;
    let ok = s == ihtheta::exact::rational::from_bigint(expected.clone());
    Ok(Verdict::from_bool("supertrace", ok, "STr(ι) = 2^(2g-1) - 2^(g-1)")
        .with("supertrace", format_rational(&s))
        .with("expected", expected))
}

fn profile_verdict(model: &ThetaModel, iota: &LinearOperator) -> Verdict {
    match model.ih_profile(iota) {
        Ok(_) => Verdict::new(
            "trace-profile",
            Status::Pass,
            "traces match the closed form and its dual",
        ),
        Err(Error::Consistency(m)) => Verdict::new("trace-profile", Status::Fail, m),
        Err(e) => Verdict::new("trace-profile", Status::Fail, e.to_string()),
    }
}

pub fn betti_cmd(ctx: &Context, g: u32, d: Option<u32>) -> Result<ReportDocument, CliError> {
    ctx.require_genus(g)?;
    let d = d.unwrap_or(g - 1);
    ctx.budget(g, ctx.budgets.closed_form, "closed-form", "")?;
    ctx.budget(d, ctx.budgets.closed_form, "closed-form power", "")?;
    let mut doc = ReportDocument::new(g, "betti", HYPOTHESES_NONE);
    doc.param("power", d);
    let dims: Vec<_> = (0..=2 * d).map(|k| betti(g, d, k)).collect();
    let rows = dims
        .iter()
        .enumerate()
        .map(|(k, b)| vec![k.to_string(), b.to_string()])
        .collect();
    doc.table("betti", &["degree", "dimension"], rows);
    let symmetric = dims.iter().eq(dims.iter().rev());
    doc.verdict(Verdict::from_bool(
        "poincare-duality",
        symmetric,
        "dim H^k = dim H^(2d-k) for every k",
    ));
    Ok(doc)
}

pub fn involution_cmd(ctx: &Context, g: u32, method: Method) -> Result<ReportDocument, CliError> {
    ctx.require_genus(g)?;
    if method != Method::Formula {
        ctx.budget(
            g,
            ctx.budgets.direct,
            "direct-ι",
            "; use --method formula for larger genus",
        )?;
    }
    ctx.budget(g, ctx.budgets.formula, "formula-ι", "")?;
    let model = ctx.model(g)?;
    let mut doc = ReportDocument::new(g, "involution", hypotheses_label(g));
    doc.param("method", method.as_str());
    let direct = match method {
        Method::Formula => None,
        _ => Some(model.iota_direct()?),
    };
    let formula = match method {
        Method::Direct => None,
        _ => Some(model.iota_formula()?),
    };
    let primary = direct.as_ref().or(formula.as_ref()).expect("one method selected");
    doc.table("traces", &["degree", "betti", "trace"], trace_rows(&model, primary)?);
    if let Some(op) = &direct {
        doc.verdict(involution_verdict("involution[direct]", op)?);
    }
    if let Some(op) = &formula {
        doc.verdict(involution_verdict("involution[formula]", op)?);
    }
    if let (Some(a), Some(b)) = (&direct, &formula) {
        let same = a == b;
        doc.verdict(Verdict::from_bool(
            "agreement",
            same,
            if same {
                "both constructions agree entry by entry"
            } else {
                "constructions differ"
            },
        ));
    }
    doc.verdict(profile_verdict(&model, primary));
    doc.verdict(supertrace_verdict(g, primary)?);
    Ok(doc)
}

pub fn strata_cmd(ctx: &Context, g: u32) -> Result<ReportDocument, CliError> {
    if g < 3 {
        return Err(CliError::Usage(format!(
            "genus {g}: the strata bounds need a non-hyperelliptic curve, so --genus must be at least 3"
        )));
    }
    ctx.budget(g, ctx.budgets.closed_form, "closed-form", "")?;
    let mut doc = ReportDocument::new(g, "strata", hypotheses_label(g));
    strata_into(&mut doc, g);
    Ok(doc)
}

fn opt(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn strata_into(doc: &mut ReportDocument, g: u32) {
    match strata_report(g) {
        Ok(report) => {
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.r.to_string(),
                        opt(r.wr),
                        r.fiber_dim.to_string(),
                        opt(r.codim_in_theta),
                        opt(r.smallness_margin),
                        opt(r.zr_dim),
                        r.multiplicity.to_string(),
                        r.is_vacuous().to_string(),
                    ]
                })
                .collect();
            doc.table(
                "strata",
                &[
                    "r",
                    "dim_wr",
                    "fiber_dim",
                    "codim_in_theta",
                    "smallness_margin",
                    "dim_zr",
                    "multiplicity",
                    "vacuous",
                ],
                rows,
            );
            doc.verdict(Verdict::new(
                "strata",
                Status::Pass,
                "smallness margins >= 1, dim Z^0 = g, dim Z^r <= g - 1, 2r <= g - 1",
            ));
        }
        Err(e) => doc.verdict(Verdict::new("strata", Status::Fail, e.to_string())),
    }
}

pub fn verify_cmd(ctx: &Context, g: u32, suites: &[Suite]) -> Result<ReportDocument, CliError> {
    ctx.require_genus(g)?;
    for s in suites {
        if s.needs_iota() {
            ctx.budget(g, ctx.budgets.formula, "formula-ι", &format!(" (suite {})", s.as_str()))?;
        } else {
            ctx.budget(
                g,
                ctx.budgets.closed_form,
                "closed-form",
                &format!(" (suite {})", s.as_str()),
            )?;
        }
    }
    let mut doc = ReportDocument::new(g, "verify", hypotheses_label(g));
    doc.param("suite", suites.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(","));
    let model: OnceCell<ThetaModel> = OnceCell::new();
    let iota: OnceCell<LinearOperator> = OnceCell::new();
    let get_model = || -> Result<&ThetaModel, CliError> {
        if model.get().is_none() {
            let _ = model.set(ctx.model(g)?);
        }
        Ok(model.get().expect("just set"))
    };
    let get_iota = || -> Result<&LinearOperator, CliError> {
        if iota.get().is_none() {
            let _ = iota.set(get_model()?.iota_formula()?);
        }
        Ok(iota.get().expect("just set"))
    };

    for suite in suites {
        match suite {
            Suite::Traces => {
                let (m, op) = (get_model()?, get_iota()?);
                doc.table("traces", &["degree", "betti", "trace"], trace_rows(m, op)?);
                doc.verdict(involution_verdict("involution", op)?);
                doc.verdict(profile_verdict(m, op));
                doc.verdict(supertrace_verdict(g, op)?);
            }
            Suite::Lefschetz => {
                let s = get_iota()?.supertrace().map_err(Error::from)?;
                let b = lefschetz_balance(g, &s)?;
                let counts = theta_char_counts(g)?;
                doc.table(
                    "theta_characteristics",
                    &["odd", "even", "total"],
                    vec![vec![
                        counts.odd.to_string(),
                        counts.even.to_string(),
                        counts.total.to_string(),
                    ]],
                );
                doc.verdict(
                    Verdict::from_bool(
                        "lefschetz",
                        b.holds,
                        "STr(ι) equals the fixed-point sum over theta characteristics",
                    )
                    .with("supertrace", format_rational(&b.supertrace))
                    .with("fixed_point_sum", &b.fixed_point_sum),
                );
            }
            Suite::Filtration => {
                let report = get_model()?.filtration_check(get_iota()?)?;
                let mut v = Verdict::from_bool(
                    "filtration",
                    report.holds,
                    "ι preserves F_q and acts on Gr_q by (-1)^(p-q) for p <= g-1",
                );
                if let Some(cx) = report.counterexample {
                    v = v
                        .with("degree", cx.degree)
                        .with("column", cx.column)
                        .with("row", cx.row)
                        .with("entry", format_rational(&cx.entry))
                        .with("expected", format_rational(&cx.expected));
                }
                doc.verdict(v);
            }
            Suite::Calc => {
                let (lhs, rhs) = binomial_identity_sides(g)?;
                doc.verdict(
                    Verdict::from_bool("calc", lhs == rhs, "Σ δ(g-1-i) C(2g,i) = 2^(2g-1) - 2^(g-1)")
                        .with("lhs", &lhs)
                        .with("rhs", &rhs),
                );
            }
            Suite::Strata => {
                if g < 3 {
                    doc.verdict(Verdict::new("strata", Status::Skipped, HYPOTHESES_OUTSIDE));
                } else {
                    strata_into(&mut doc, g);
                }
            }
            Suite::Nonmult => {
                let m = get_model()?;
                let v = match m.nonmultiplicativity_witness(get_iota()?) {
                    Ok(w) => {
                        let status = if g.is_multiple_of(2) {
                            Status::Pass
                        } else {
                            Status::Skipped
                        };
                        let detail = if g.is_multiple_of(2) {
                            "ι(w) = -w and ι(w^(g-1)) = w^(g-1) != ι(w)^(g-1), so ι is not multiplicative"
                        } else {
                            "odd genus: the witness is informational only"
                        };
                        Verdict::new("nonmult", status, detail)
                            .with("eta_coefficient", &w.eta_coefficient)
                            .with("theta_coefficient", &w.theta_coefficient)
                            .with("power_integral", format_rational(&w.power_integral))
                            .with("obstruction", w.obstruction)
                    }
                    Err(Error::NoEigenvector { .. }) => Verdict::new(
                        "nonmult",
                        Status::Skipped,
                        "no -1 eigenvector in span(η, φ*θ) at this genus",
                    ),
                    Err(Error::Consistency(msg)) => Verdict::new("nonmult", Status::Fail, msg),
                    Err(e) => return Err(e.into()),
                };
                doc.verdict(v);
            }
        }
    }
    Ok(doc)
}
