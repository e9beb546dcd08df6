use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use mixlab::catalog::{product_automorphism, Catalog, Instance};
use mixlab::cohomology::{
    certificate_from_profile, degree_profile, entropy, find_parity_pair, invert_action, kunneth_action,
    projector_convergence_rate, refined_delta_threshold, DegreeProfile, GapCertificate, KunnethAction,
};
use mixlab::mixing::{
    bound_json, correlation_exact, correlation_montecarlo, correlation_svg, fit_and_check, make_holder_function,
    series_csv, theorem_bound, to_json, CorrelationSeries, TestFunction,
};

use crate::{Cli, Command, DegreesArgs, KunnethArgs, MixArgs, RateArgs};

/// Largest `l + m` searched for the refined parity pair.
const PARITY_CAP: u32 = 200;

#[derive(Debug)]
pub enum Failure {
    /// I/O, schema or configuration problems (exit 1).
    Input(anyhow::Error),
    /// Mathematical hypotheses not met (exit 2).
    Hypothesis(String),
}

impl From<mixlab::Error> for Failure {
    fn from(e: mixlab::Error) -> Self {
        if e.is_hypothesis_failure() {
            Failure::Hypothesis(e.to_string())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn refuse(why: String) -> Failure {
    mixlab::Error::Hypothesis(why).into()
}

pub fn run(cli: &Cli) -> Outcome {
    let catalog = load_catalog(cli.catalog.as_deref())?;
    let out = Output {
        dir: cli.out.as_deref(),
    };
    match &cli.command {
        Command::Degrees(a) => degrees(&catalog, a, &out),
        Command::Kunneth(a) => kunneth(&catalog, a, &out),
        Command::Rate(a) => rate(&catalog, a, &out),
        Command::Mix(a) => mix(&catalog, a, &out),
        Command::ValidateCatalog => validate(&catalog, &out),
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    let Some(path) = path else {
        return Ok(Catalog::builtin());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Catalog::parse(&text)
        .with_context(|| format!("invalid catalog {}", path.display()))
        .map_err(Failure::Input)
}

struct Output<'a> {
    dir: Option<&'a Path>,
}

impl Output<'_> {
    fn file(&self, name: &str, contents: &str) -> Outcome {
        if let Some(dir) = self.dir {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }

    /// Prints the versioned report and stores it as `name`.
    fn report<T: Serialize>(&self, name: &str, value: &T) -> Outcome {
        let text = to_json(value)?;
        print!("{text}");
        self.file(name, &text)
    }
}

fn positive(name: &str, x: f64) -> Outcome {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Failure::Input(anyhow::anyhow!(
            "--{name} must be positive and finite, got {x}"
        )))
    }
}

fn check_certificate(cert: &GapCertificate) -> Outcome {
    match cert.failure() {
        Some(why) => Err(refuse(why)),
        None => Ok(()),
    }
}

fn refined_summary(cert: &GapCertificate, delta: Option<f64>) -> Value {
    match refined_delta_threshold(cert.delta_plus, cert.delta_minus) {
        Ok(threshold) => {
            let pair = delta.map(|d| find_parity_pair(cert.delta_plus, cert.delta_minus, d, PARITY_CAP));
            json!({
                "threshold": threshold,
                "parity_pair": pair.flatten().map(|(l, m)| json!({ "l": l, "m": m })),
                "fallback": Value::Null,
            })
        }
        Err(e) => json!({
            "threshold": Value::Null,
            "parity_pair": Value::Null,
            "fallback": format!("admissible interval ({e})"),
        }),
    }
}

fn degrees(catalog: &Catalog, args: &DegreesArgs, out: &Output) -> Outcome {
    positive("margin-delta0", args.margin_delta0)?;
    let inst = catalog.get(&args.instance.instance)?;
    let h = inst.hodge();
    let profile = degree_profile(h)?;
    let cert = certificate_from_profile(&profile);
    let entropy = if h.dim() == 2 { entropy(h).ok() } else { None };
    let (certificate, delta0, refined, failure) = match &cert {
        Ok(c) => (
            Some(c.clone()),
            Some(c.delta0(args.margin_delta0)),
            Some(refined_summary(c, args.delta)),
            c.failure(),
        ),
        Err(e) => (None, None, None, Some(e.to_string())),
    };
    let report = json!({
        "instance": inst.label(),
        "kind": inst.kind(),
        "profile": profile,
        "entropy": entropy,
        "certificate": certificate,
        "delta0": delta0,
        "refined": refined,
        "delta": args.delta.map(|d| json!({
            "value": d,
            "admissible": cert.as_ref().map(|c| c.admits(d)).unwrap_or(false),
        })),
        "failure": failure,
    });
    out.report("degrees.json", &report)?;
    match failure {
        Some(why) => Err(refuse(why)),
        None => Ok(()),
    }
}

fn require_complete(inst: &Instance) -> Outcome {
    let h = inst.hodge();
    if h.is_complete() {
        return Ok(());
    }
    let missing: Vec<String> = h.missing().iter().map(|(r, s)| format!("H^{{{r},{s}}}")).collect();
    Err(refuse(format!(
        "{} ({}) lacks {}; the product action needs every Hodge block",
        inst.label(),
        inst.kind(),
        missing.join(", ")
    )))
}

fn kunneth(catalog: &Catalog, args: &KunnethArgs, out: &Output) -> Outcome {
    positive("tolerance", args.tolerance)?;
    positive("margin-delta0", args.margin_delta0)?;
    let inst = catalog.get(&args.instance.instance)?;
    require_complete(inst)?;
    let profile = degree_profile(inst.hodge())?;
    let cert = certificate_from_profile(&profile)?;
    check_certificate(&cert)?;
    let action: KunnethAction = match inst.torus() {
        Some(t) => product_automorphism(t)?.kunneth,
        None => kunneth_action(&invert_action(inst.hodge())?, inst.hodge())?,
    };
    let d_p = cert.d_p;
    let delta0 = cert.delta0(args.margin_delta0);
    let dom = action.dominant();
    let dom_radius = action.dominant_radius();
    let relative_error = (dom_radius.radius - d_p * d_p).abs() / (d_p * d_p);
    let ceiling = d_p * delta0;
    let second = action.second_radius();
    let report = json!({
        "instance": inst.label(),
        "d_p": d_p,
        "d_p_squared": d_p * d_p,
        "delta0": delta0,
        "dominant": {
            "a": action.blocks[dom].a,
            "b": action.blocks[dom].b,
            "radius": dom_radius.radius,
            "error": dom_radius.error,
            "relative_error": relative_error,
        },
        "second_radius": second,
        "other_ceiling": ceiling,
        "blocks": action.summaries(),
        "dominant_matches": relative_error <= args.tolerance,
        "others_within_ceiling": second <= ceiling,
        "tolerance": args.tolerance,
    });
    out.report("kunneth.json", &report)
}

fn rate(catalog: &Catalog, args: &RateArgs, out: &Output) -> Outcome {
    positive("tolerance", args.tolerance)?;
    positive("margin-delta0", args.margin_delta0)?;
    let inst = catalog.get(&args.instance.instance)?;
    let h = inst.hodge();
    let profile: DegreeProfile = degree_profile(h)?;
    let cert = certificate_from_profile(&profile)?;
    let block = h.require(profile.p, profile.p)?;
    let report = projector_convergence_rate(block, args.n_max)?;
    let delta0 = cert.delta0(args.margin_delta0);
    let reference = -(cert.d_p / delta0).ln();
    let relative_error = report.relative_error();
    let doc = json!({
        "instance": inst.label(),
        "p": profile.p,
        "n_max": args.n_max,
        "delta0": delta0,
        "reference_slope": reference,
        "slope_below_reference": report.slope.map(|s| s <= reference),
        "relative_error": relative_error,
        "within_tolerance": relative_error.map(|e| e <= args.tolerance),
        "tolerance": args.tolerance,
        "rate": report,
    });
    out.report("rate.json", &doc)
}

fn test_functions(args: &MixArgs) -> Result<(TestFunction, TestFunction), Failure> {
    Ok(match args.radius {
        None => {
            let f = TestFunction::cosine([1, 0, 0, 0])?;
            (f.clone(), f)
        }
        Some(r) => (
            make_holder_function(args.beta, r, args.seed)?,
            make_holder_function(args.beta_prime, r, args.seed.wrapping_add(1))?,
        ),
    })
}

fn agreement(exact: &CorrelationSeries, mc: &CorrelationSeries) -> Value {
    let n = mc.samples.unwrap_or(0) as f64;
    let sqrt_law = 4.0 / n.sqrt();
    let deviations: Vec<f64> = exact
        .entries
        .iter()
        .zip(&mc.entries)
        .map(|(e, m)| (e.value - m.value).abs())
        .collect();
    let within_bars = exact
        .entries
        .iter()
        .zip(&mc.entries)
        .all(|(e, m)| (e.value - m.value).abs() <= m.abs_error);
    json!({
        "samples": mc.samples,
        "seed": mc.seed,
        "max_deviation": deviations.iter().copied().fold(0.0, f64::max),
        "max_abs_error": mc.entries.iter().map(|e| e.abs_error).fold(0.0, f64::max),
        "within_error_bars": within_bars,
        "four_over_sqrt_n": sqrt_law,
        "within_four_over_sqrt_n": deviations.iter().all(|&d| d <= sqrt_law),
    })
}

fn mix(catalog: &Catalog, args: &MixArgs, out: &Output) -> Outcome {
    let inst = catalog.get(&args.instance.instance)?;
    let Some(t) = inst.torus() else {
        return Err(refuse(format!(
            "{} ({}) is not a torus; correlations are computed on torus instances only",
            inst.label(),
            inst.kind()
        )));
    };
    let profile = degree_profile(t.hodge())?;
    let cert = certificate_from_profile(&profile)?;
    check_certificate(&cert)?;
    let delta = args.delta.unwrap_or_else(|| (cert.lo * cert.hi).sqrt());
    let (phi, psi) = test_functions(args)?;
    let norm_phi = phi.norm_holder_bound_at(args.beta);
    let norm_psi = psi.norm_holder_bound_at(args.beta_prime);
    let bound = theorem_bound(&cert, delta, args.beta, args.beta_prime, norm_phi, norm_psi)?;
    let exact = correlation_exact(t, &phi, &psi, args.n_max)?;
    let mc = match args.samples {
        0 => None,
        n => Some(correlation_montecarlo(t, &phi, &psi, args.n_max, n, args.seed)?),
    };
    let report = fit_and_check(&exact, &bound)?;

    let mut series = vec![&exact];
    series.extend(mc.as_ref());
    out.file("correlations.csv", &series_csv(&series))?;
    out.file("bound.json", &bound_json(&report)?)?;
    if args.svg {
        out.file("correlations.svg", &correlation_svg(&series, &bound, &report))?;
    }
    let doc = json!({
        "instance": t.label(),
        "phi": phi.label,
        "psi": psi.label,
        "norm_phi": norm_phi,
        "norm_psi": norm_psi,
        "interval": [cert.lo, cert.hi],
        "bound": report,
        "montecarlo": mc.as_ref().map(|m| agreement(&exact, m)),
    });
    out.report("mix.json", &doc)?;
    if report.holds {
        Ok(())
    } else {
        Err(refuse(format!("no finite constant fits the bound for {}", t.label())))
    }
}

fn validate(catalog: &Catalog, out: &Output) -> Outcome {
    let rows: Vec<Value> = catalog
        .instances()
        .iter()
        .map(|inst| {
            let h = inst.hodge();
            let (degrees, interval, note) = match degree_profile(h) {
                Ok(p) => {
                    let (interval, note) = match certificate_from_profile(&p) {
                        Ok(c) => match c.failure() {
                            None => (Some([c.lo, c.hi]), None),
                            Some(why) => (None, Some(why)),
                        },
                        Err(e) => (None, Some(e.to_string())),
                    };
                    (Some(p.degrees), interval, note)
                }
                Err(e) => (None, None, Some(e.to_string())),
            };
            json!({
                "label": inst.label(),
                "kind": inst.kind(),
                "dim": h.dim(),
                "complete": h.is_complete(),
                "hyperbolic": inst.torus().map(|t| t.is_hyperbolic()),
                "degrees": degrees,
                "interval": interval,
                "note": note,
            })
        })
        .collect();
    out.report("catalog.json", &json!({ "instances": rows }))
}
