//! One function per subcommand, each producing an [`Envelope`].

use qcatalan::exactnum::{bernoulli_table, rational_to_f64};
use qcatalan::family::Family;
use qcatalan::limitlaw::{
    exact_standardized_mgf, geco_checks_for_spec, ks_distance_to_normal, log_mgf_truncated,
    standardized_density, tail_series_spec,
};
use qcatalan::moments::{dist_summary, general_moments_closed, preset};
use qcatalan::polyq::quotient_poly;
use qcatalan::shape::scan_family;
use qcatalan::{Error, FamilyParams, GecoParams, IntPoly, QuotientSpec, Registry, Result};

use crate::output::{Cell, Envelope};

pub fn family(name: &str, m: Option<u32>) -> Result<Box<dyn Family>> {
    Registry::with_builtin().create(name, &FamilyParams { m })
}

fn coeff_rows(env: &mut Envelope, p: &IntPoly) {
    for (k, c) in p.coeffs().iter().enumerate() {
        env.push(vec![k.into(), c.into()]);
    }
}

pub fn coeffs(fam: &dyn Family, n: u32) -> Result<Envelope> {
    let p = fam.poly(n)?;
    let mut env = Envelope::new("coeffs", &["k", "coefficient"]);
    env.param("family", fam.label()).param("n", n);
    coeff_rows(&mut env, &p);
    Ok(env)
}

pub fn moments(fam: &dyn Family, from: u32, to: u32) -> Result<Envelope> {
    let mut env = Envelope::new(
        "moments",
        &[
            "n",
            "mass",
            "mean",
            "variance",
            "mean_closed",
            "variance_closed",
            "match",
            "sigma",
        ],
    );
    env.param("family", fam.label()).param("from", from).param("to", to);
    for n in from..=to {
        let s = dist_summary(&fam.poly(n)?)?;
        let (mean_c, var_c) = fam.closed_moments(n)?;
        let ok = s.mean == mean_c && s.variance == var_c;
        env.push(vec![
            n.into(),
            s.mass.into(),
            s.mean.to_string().into(),
            s.variance.to_string().into(),
            mean_c.to_string().into(),
            var_c.to_string().into(),
            ok.into(),
            s.sigma.into(),
        ]);
    }
    Ok(env)
}

/// Symmetric grid `-t_max, ..., t_max` built from integer multiples of `step`.
fn t_grid(t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite() && t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument("need step > 0 and t-max >= 0".into()));
    }
    let half = (t_max / step + 1e-9).floor() as i64;
    if half > 10_000 {
        return Err(Error::InvalidArgument("t grid exceeds 20001 points".into()));
    }
    Ok((-half..=half).map(|i| i as f64 * step).collect())
}

pub struct NormalityArgs {
    pub n: u32,
    pub t_max: f64,
    pub step: f64,
    pub truncation: usize,
    pub density: bool,
}

pub fn normality(fam: &dyn Family, args: &NormalityArgs) -> Result<Envelope> {
    let n = args.n;
    if n < 2 {
        return Err(Error::InvalidArgument("normality needs n >= 2".into()));
    }
    if args.truncation < 1 {
        return Err(Error::InvalidArgument("truncation must be >= 1".into()));
    }
    let grid = t_grid(args.t_max, args.step)?;
    let p = fam.poly(n)?;
    let spec = fam.spec(n)?;
    let table = bernoulli_table(args.truncation + 10)?;

    let mut env = Envelope::new("normality", &["section", "x", "value", "reference", "residual"]);
    env.param("family", fam.label())
        .param("n", n)
        .param("t_max", args.t_max)
        .param("step", args.step)
        .param("truncation", args.truncation);

    env.push(vec![
        "ks".into(),
        n.into(),
        ks_distance_to_normal(&p)?.into(),
        Cell::Empty,
        Cell::Empty,
    ]);

    // Exact MGF against the normal one, residual against the truncated series
    // (which includes the mean shift mu t / sigma, removed here).
    let (mean, var) = general_moments_closed(&spec);
    let shift = rational_to_f64(&mean) / rational_to_f64(&var).sqrt();
    for &t in &grid {
        let exact = exact_standardized_mgf(&p, t)?;
        let series = log_mgf_truncated(&spec, t, args.truncation, &table)?;
        let centred = (series - shift * t).exp();
        env.push(vec![
            "mgf".into(),
            t.into(),
            exact.into(),
            (t * t / 2.0).exp().into(),
            (exact - centred).into(),
        ]);
    }

    // k = 1 term against t^2/2; the residual column carries the k >= 2 tail.
    for &t in &grid {
        let r = tail_series_spec(&spec, n, t, args.truncation, &table)?;
        env.push(vec![
            "series".into(),
            t.into(),
            r.leading_term.into(),
            (t * t / 2.0).into(),
            r.tail_value.into(),
        ]);
    }

    if args.density {
        for (z, d, phi) in standardized_density(&p)? {
            env.push(vec!["density".into(), z.into(), d.into(), phi.into(), (d - phi).into()]);
        }
    }
    Ok(env)
}

pub fn shape(fam: &dyn Family, from: u32, to: u32) -> Result<Envelope> {
    let mut env = Envelope::new(
        "shape",
        &[
            "n",
            "family",
            "degree",
            "interior_unimodal",
            "first_unimodality_violation",
            "min_logconcave_t",
            "first_lc_violation_at_t0",
        ],
    );
    env.param("family", fam.label()).param("from", from).param("to", to);
    for r in scan_family(fam, from, to)? {
        env.push(vec![
            r.n.into(),
            r.family.into(),
            r.degree.into(),
            r.interior_unimodal.into(),
            r.first_unimodality_violation.into(),
            r.min_logconcave_t.into(),
            r.first_lc_violation_at_t0.into(),
        ]);
    }
    Ok(env)
}

/// Where the exponent sequences of `general` come from.
pub enum GeneralSource {
    Custom { a: Vec<u32>, b: Vec<u32> },
    Preset { name: String, n: u32, m: Option<u32> },
}

pub struct GeneralArgs {
    pub source: GeneralSource,
    pub k_max: u32,
    pub params: Option<GecoParams>,
}

pub fn general(args: &GeneralArgs) -> Result<Envelope> {
    let mut env = Envelope::new("general", &["section", "key", "value", "bound", "holds"]);
    // Custom sequences are judged against the C_n(q) constants with n = len(a).
    let (spec, n, default_params) = match &args.source {
        GeneralSource::Custom { a, b } => {
            env.param("a", join(a)).param("b", join(b));
            let spec = QuotientSpec::new(a.clone(), b.clone(), "custom")?;
            (spec, a.len() as u32, GecoParams::catalan())
        }
        GeneralSource::Preset { name, n, m } => {
            let fam = family(name, *m)?;
            env.param("preset", fam.label()).param("n", n);
            (preset(name, *n, *m)?, *n, fam.geco_params())
        }
    };
    let params = args.params.unwrap_or(default_params);
    env.param("k_max", args.k_max)
        .param("alpha", params.alpha())
        .param("beta", params.beta())
        .param("gamma", params.gamma());

    let p = quotient_poly(&spec)?;
    for (k, c) in p.coeffs().iter().enumerate() {
        env.push(vec!["coeff".into(), k.into(), c.into(), Cell::Empty, Cell::Empty]);
    }

    let s = dist_summary(&p)?;
    let (mean_c, var_c) = general_moments_closed(&spec);
    let text = |key: &str, v: String, closed: Option<String>, holds: Option<bool>| -> Vec<Cell> {
        vec!["moment".into(), key.into(), v.into(), closed.into(), holds.into()]
    };
    env.push(text("mass", s.mass.to_string(), None, None));
    env.push(text(
        "mean",
        s.mean.to_string(),
        Some(mean_c.to_string()),
        Some(s.mean == mean_c),
    ));
    env.push(text(
        "variance",
        s.variance.to_string(),
        Some(var_c.to_string()),
        Some(s.variance == var_c),
    ));

    // Ratios need a positive variance and a size to evaluate the bound at.
    if n >= 1 && spec.variance_numerator() > 0.into() && args.k_max >= 1 {
        for c in geco_checks_for_spec(&spec, n, params, 1..=args.k_max)? {
            env.push(vec![
                "ratio".into(),
                c.k.into(),
                c.ratio.into(),
                c.bound.into(),
                c.holds.into(),
            ]);
        }
    }
    Ok(env)
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
