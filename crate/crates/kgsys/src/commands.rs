use std::fs;
use std::path::Path;

use kgsys_core::kg_system::{
    check_dual_orthogonality, check_orthogonality, classical_system, higher_recurrences_guarded, is_classical,
    krawtchouk_guarded, verify_recurrences,
};
use kgsys_core::oracle::bar_via_oracle;
use kgsys_core::reflection::verify_reflection_properties_guarded;
use kgsys_core::sympow::{bar_direct, bar_guarded, gamma_guarded};
use kgsys_core::{
    classical_binomial, infer_weights, kg_from_reflection, verify_k_condition, Check, Error, ExactMatrix,
    GaussianRational, KgSystem, KrawtchoukDegree, Rational, Report, Ring, UniPoly,
};

use crate::cli::{BuildArgs, CheckKind, Engine, Format, MatrixArgs, Source, VerifyArgs};
use crate::format::{
    encode_vector, matrix_csv, parse_positive, parse_vector, report_csv, split_list, to_json, BundleJson, FormatError,
    MatrixJson, OrderPairJson, ReflectJson, ReportJson, SystemJson,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

/// Why a command produced no regular output.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Capacity(String),

    #[error("{0}")]
    Identity(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Capacity(_) => EXIT_CAPACITY,
            Failure::Identity(_) => EXIT_FAIL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::Identity(_) => Failure::Identity(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Rendered output and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn data(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn guard(g: u64) -> usize {
    usize::try_from(g).unwrap_or(usize::MAX)
}

fn load_matrix(path: &Path) -> Result<ExactMatrix, Failure> {
    let json: MatrixJson = serde_json::from_str(&read(path)?).map_err(FormatError::from)?;
    Ok(json.decode("matrix")?)
}

fn render_matrix(m: &ExactMatrix, degree: u32, dim: usize, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => to_json(&MatrixJson::induced(m, degree, dim)),
        Format::Csv => matrix_csv(m)?,
    })
}

pub fn sympow(args: &MatrixArgs) -> Result<Outcome, Failure> {
    let a = load_matrix(&args.matrix)?;
    let limit = guard(args.output.guard);
    let out = match args.engine {
        Engine::Main => bar_guarded(&a, args.degree, limit)?,
        Engine::Oracle => bar_via_oracle(&a, args.degree, limit)?,
    };
    render_matrix(&out, args.degree, a.rows() - 1, args.output.format).map(Outcome::data)
}

pub fn gamma(args: &MatrixArgs) -> Result<Outcome, Failure> {
    let x = load_matrix(&args.matrix)?;
    let limit = guard(args.output.guard);
    let out = match args.engine {
        Engine::Main => gamma_guarded(&x, args.degree, limit)?,
        Engine::Oracle => gamma_by_interpolation(&x, args.degree, limit)?,
    };
    render_matrix(&out, args.degree, x.rows() - 1, args.output.format).map(Outcome::data)
}

/// `Γ(X)` as the `t`-coefficient of `bar(I + tX)`, recovered by Lagrange
/// interpolation at `t = 0..=N` with the oracle engine.
pub fn gamma_by_interpolation(x: &ExactMatrix, degree: u32, limit: usize) -> Result<ExactMatrix, Error> {
    let id = ExactMatrix::identity(x.rows());
    let nodes: Vec<i64> = (0..=i64::from(degree)).collect();
    let mut total: Option<ExactMatrix> = None;
    for &k in &nodes {
        let basis = nodes.iter().filter(|&&m| m != k).fold(UniPoly::one(), |acc, &m| {
            let den = GaussianRational::from(k - m);
            let step = UniPoly::linear(
                GaussianRational::from(-m).checked_div(&den).expect("distinct nodes"),
                den.inv().expect("distinct nodes"),
            );
            acc.mul_ref(&step)
        });
        let sample = bar_via_oracle(&id.try_add(&x.scale(&GaussianRational::from(k)))?, degree, limit)?;
        let term = sample.scale(&basis.coeff(1));
        total = Some(match total {
            None => term,
            Some(t) => &t + &term,
        });
    }
    Ok(total.expect("at least one node"))
}

/// A source after parsing, before the K-condition is known to hold.
struct Loaded {
    a: ExactMatrix,
    weights: Option<(Vec<GaussianRational>, Vec<GaussianRational>)>,
    reflect: Option<(Vec<GaussianRational>, Vec<Rational>)>,
    degree: Option<u32>,
    bundle: Option<BundleJson>,
}

fn decode_system(json: &SystemJson) -> Result<Loaded, Failure> {
    let a = json.a.decode("A")?;
    let weights = match (&json.p, &json.d) {
        (Some(p), Some(d)) => Some((parse_vector(p, "p")?, parse_vector(d, "D")?)),
        (None, None) => None,
        _ => return Err(Failure::Usage("give both p and D, or neither".into())),
    };
    let reflect = match &json.reflect {
        Some(r) => Some((parse_vector(&r.v, "reflect.v")?, parse_positive(&r.s, "reflect.s")?)),
        None => None,
    };
    Ok(Loaded {
        a,
        weights,
        reflect,
        degree: None,
        bundle: None,
    })
}

fn load_source(source: &Source) -> Result<Loaded, Failure> {
    let mut loaded = if let Some(path) = &source.system {
        let value: serde_json::Value = serde_json::from_str(&read(path)?).map_err(FormatError::from)?;
        if value.get("system").is_some() {
            let bundle: BundleJson = serde_json::from_value(value).map_err(FormatError::from)?;
            let mut loaded = decode_system(&bundle.system)?;
            loaded.degree = Some(bundle.degree);
            loaded.bundle = Some(bundle);
            loaded
        } else {
            let json: SystemJson = serde_json::from_value(value).map_err(FormatError::from)?;
            decode_system(&json)?
        }
    } else if let Some(text) = &source.reflect {
        let v = parse_vector(&split_list(text)?, "reflect")?;
        let s = match &source.scale {
            Some(text) => parse_positive(&split_list(text)?, "scale")?,
            None => vec![Rational::from_integer(1.into()); v.len()],
        };
        let rs = kg_from_reflection(&v, &s)?;
        Loaded {
            a: rs.system.a().clone(),
            weights: Some((rs.system.p().to_vec(), rs.system.d().to_vec())),
            reflect: Some((v, s)),
            degree: None,
            bundle: None,
        }
    } else if let Some(n) = source.classical {
        let sys = classical_system();
        Loaded {
            a: sys.a().clone(),
            weights: Some((sys.p().to_vec(), sys.d().to_vec())),
            reflect: None,
            degree: Some(n),
            bundle: None,
        }
    } else {
        return Err(Failure::Usage(
            "one of --system, --reflect, --classical is required".into(),
        ));
    };
    if let Some(n) = source.degree {
        if let Some(b) = &loaded.bundle {
            if b.degree != n {
                return Err(Failure::Usage(format!("bundle has degree {}, not {n}", b.degree)));
            }
        }
        loaded.degree = Some(n);
    }
    Ok(loaded)
}

/// The K-condition report and, when it passes, the validated system.
fn resolve(loaded: &Loaded) -> (Report, Option<KgSystem>) {
    let (p, d) = match &loaded.weights {
        Some(w) => w.clone(),
        None => match infer_weights(&loaded.a) {
            Ok(w) => w,
            Err(e) => {
                let mut report = Report::new();
                report.push(Check::fail("infer_weights", e.to_string()));
                return (report, None);
            }
        },
    };
    let report = verify_k_condition(&loaded.a, &p, &d);
    let system = if report.passed() {
        KgSystem::new(loaded.a.clone(), p, d).ok()
    } else {
        None
    };
    (report, system)
}

fn degree_of(loaded: &Loaded) -> Result<u32, Failure> {
    loaded
        .degree
        .ok_or_else(|| Failure::Usage("--degree is required for this source".into()))
}

fn system_json(sys: &KgSystem, reflect: Option<&(Vec<GaussianRational>, Vec<Rational>)>) -> SystemJson {
    SystemJson {
        a: MatrixJson::encode(sys.a()),
        p: Some(encode_vector(sys.p())),
        d: Some(encode_vector(sys.d())),
        reflect: reflect.map(|(v, s)| ReflectJson {
            v: encode_vector(v),
            s: s.iter().map(ToString::to_string).collect(),
        }),
    }
}

fn bundle(sys: &KgSystem, kd: &KrawtchoukDegree, limit: usize) -> Result<BundleJson, Error> {
    let n = kd.degree;
    let dim = sys.dim();
    let induced = |m: &ExactMatrix| MatrixJson::induced(m, n, dim);
    let mut higher = Vec::new();
    for j in 0..=dim {
        for pair in higher_recurrences_guarded(sys, n, j, n as usize, limit)?
            .into_iter()
            .skip(2)
        {
            higher.push(OrderPairJson {
                variable: j,
                order: pair.order,
                rec: induced(&pair.rec),
                spec: induced(&pair.spec),
            });
        }
    }
    Ok(BundleJson {
        system: system_json(sys, None),
        degree: n,
        phi: induced(&kd.phi),
        b: induced(&kd.b),
        pbar: induced(&kd.pbar),
        dbar: induced(&kd.dbar),
        rec: kd.gamma_x.iter().map(|g| induced(&g.adjoint())).collect(),
        spec: kd.gamma_lambda.iter().map(|g| induced(&g.adjoint())).collect(),
        higher,
    })
}

pub fn build(args: &BuildArgs) -> Result<Outcome, Failure> {
    if args.output.format == Format::Csv {
        return Err(Failure::Usage("bundles are written as JSON only".into()));
    }
    let loaded = load_source(&args.source)?;
    let degree = degree_of(&loaded)?;
    let (report, system) = resolve(&loaded);
    let Some(sys) = system else {
        let failed: Vec<String> = report
            .violations()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Failure::Usage(format!("not a KG system: {}", failed.join("; "))));
    };
    let limit = guard(args.output.guard);
    let kd = krawtchouk_guarded(&sys, degree, limit)?;
    let mut out = bundle(&sys, &kd, limit)?;
    out.system = system_json(&sys, loaded.reflect.as_ref());
    Ok(Outcome::data(to_json(&out)))
}

fn parse_fault(text: &str, size: usize) -> Result<(usize, usize), Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--inject-fault expects ROW,COL inside a {size}x{size} matrix, got {text:?}"
        ))
    };
    let (r, c) = text.split_once(',').ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if r >= size || c >= size {
        return Err(bad());
    }
    Ok((r, c))
}

fn compare_stored(report: &mut Report, name: &str, stored: &MatrixJson, fresh: &ExactMatrix) -> Result<(), Failure> {
    let m = stored.decode(name)?;
    report.push(Check::matrices(name, &m, fresh));
    Ok(())
}

fn check_bundle(report: &mut Report, stored: &BundleJson, clean: &BundleJson) -> Result<(), Failure> {
    let fresh = |m: &MatrixJson| m.decode("recomputed").expect("freshly encoded matrices decode");
    compare_stored(report, "bundle_Phi", &stored.phi, &fresh(&clean.phi))?;
    compare_stored(report, "bundle_B", &stored.b, &fresh(&clean.b))?;
    compare_stored(report, "bundle_pbar", &stored.pbar, &fresh(&clean.pbar))?;
    compare_stored(report, "bundle_Dbar", &stored.dbar, &fresh(&clean.dbar))?;
    let lists = [("Rec", &stored.rec, &clean.rec), ("Spec", &stored.spec, &clean.spec)];
    for (label, got, want) in lists {
        if got.len() != want.len() {
            report.push(Check::fail(
                &format!("bundle_{label}"),
                format!("{} matrices stored, {} expected", got.len(), want.len()),
            ));
            continue;
        }
        for (j, (g, w)) in got.iter().zip(want).enumerate() {
            compare_stored(report, &format!("bundle_{label}[j={j}]"), g, &fresh(w))?;
        }
    }
    if stored.higher.len() != clean.higher.len() {
        report.push(Check::fail(
            "bundle_higher",
            format!("{} pairs stored, {} expected", stored.higher.len(), clean.higher.len()),
        ));
        return Ok(());
    }
    for (g, w) in stored.higher.iter().zip(&clean.higher) {
        let tag = format!("j={},k={}", w.variable, w.order);
        if (g.variable, g.order) != (w.variable, w.order) {
            report.push(Check::fail(
                &format!("bundle_higher[{tag}]"),
                format!("stored pair is j={},k={}", g.variable, g.order),
            ));
            continue;
        }
        compare_stored(report, &format!("bundle_Rec[{tag}]"), &g.rec, &fresh(&w.rec))?;
        compare_stored(report, &format!("bundle_Spec[{tag}]"), &g.spec, &fresh(&w.spec))?;
    }
    Ok(())
}

fn reflection_check(
    report: &mut Report,
    sys: &KgSystem,
    reflect: Option<&(Vec<GaussianRational>, Vec<Rational>)>,
    degree: u32,
    limit: usize,
) -> Result<(), Failure> {
    let Some((v, s)) = reflect else {
        report.push(Check::fail(
            "reflection",
            "no reflection data; use --reflect or a system with a reflect entry",
        ));
        return Ok(());
    };
    let rs = match kg_from_reflection(v, s) {
        Ok(rs) => rs,
        Err(e) => {
            report.push(Check::fail("reflection", e.to_string()));
            return Ok(());
        }
    };
    if &rs.system != sys {
        report.push(Check::fail(
            "reflection",
            "reflection data generates a different system",
        ));
        return Ok(());
    }
    report.extend(verify_reflection_properties_guarded(&rs, degree, limit)?.report);
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let loaded = load_source(&args.source)?;
    let degree = degree_of(&loaded)?;
    let limit = guard(args.output.guard);
    let (k_report, system) = resolve(&loaded);

    let mut selected = args.checks.clone();
    if selected.is_empty() {
        selected = vec![
            CheckKind::Kcondition,
            CheckKind::Orthogonality,
            CheckKind::Dual,
            CheckKind::Recurrence,
        ];
        if loaded.reflect.is_some() {
            selected.push(CheckKind::Reflection);
        }
        if system.as_ref().is_some_and(is_classical) {
            selected.push(CheckKind::Classical);
        }
    }
    selected.sort();
    selected.dedup();

    let mut report = Report::new();
    let Some(sys) = system else {
        report.extend(k_report);
        for kind in selected.iter().filter(|&&k| k != CheckKind::Kcondition) {
            report.push(Check::fail(
                &format!("{kind:?}").to_lowercase(),
                "not evaluated: the system does not satisfy the K-condition",
            ));
        }
        return render_report(&report, args.output.format);
    };

    let mut kd = krawtchouk_guarded(&sys, degree, limit)?;
    if let Some(b) = &loaded.bundle {
        let clean = bundle(&sys, &kd, limit)?;
        check_bundle(&mut report, b, &clean)?;
    }
    if let Some(text) = &args.inject_fault {
        let (r, c) = parse_fault(text, kd.phi.rows())?;
        let bumped = kd.phi.get(r, c) + &GaussianRational::one();
        kd.phi.set(r, c, bumped);
    }
    let independent = match args.engine {
        Engine::Main => bar_direct(sys.a(), degree, limit)?,
        Engine::Oracle => bar_via_oracle(sys.a(), degree, limit)?,
    };
    report.push(Check::matrices("phi", &kd.phi, &independent.adjoint()));

    for kind in &selected {
        match kind {
            CheckKind::Kcondition => report.extend(k_report.clone()),
            CheckKind::Orthogonality => report.push(check_orthogonality(&kd)),
            CheckKind::Dual => report.push(check_dual_orthogonality(&kd)),
            CheckKind::Recurrence => report.extend(verify_recurrences(&sys, &kd, limit)),
            CheckKind::Reflection => reflection_check(&mut report, &sys, loaded.reflect.as_ref(), degree, limit)?,
            CheckKind::Classical => {
                if is_classical(&sys) {
                    report.extend(classical_binomial(degree)?.report());
                } else {
                    report.push(Check::fail("classical", "not the symmetric binomial system"));
                }
            }
        }
    }
    render_report(&report, args.output.format)
}

fn render_report(report: &Report, format: Format) -> Result<Outcome, Failure> {
    let text = match format {
        Format::Json => to_json(&ReportJson::from(report)),
        Format::Csv => report_csv(report)?,
    };
    Ok(Outcome {
        text,
        passed: report.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolated_gamma_matches_closed_form() {
        let x = ExactMatrix::from_ints(&[[0, -12], [1, 7]]);
        for n in 0..=4 {
            assert_eq!(
                gamma_by_interpolation(&x, n, 100).unwrap(),
                gamma_guarded(&x, n, 100).unwrap()
            );
        }
        let v = ExactMatrix::from_ints(&[[1, 2, 0], [0, -1, 3], [5, 0, 2]]);
        assert_eq!(
            gamma_by_interpolation(&v, 3, 100).unwrap(),
            gamma_guarded(&v, 3, 100).unwrap()
        );
    }

    #[test]
    fn fault_positions() {
        assert_eq!(parse_fault("1,2", 3).unwrap(), (1, 2));
        assert!(parse_fault("3,0", 3).is_err());
        assert!(parse_fault("1", 3).is_err());
    }
}
