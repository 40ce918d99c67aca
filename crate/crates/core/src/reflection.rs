//! KG systems generated by unitary reflections `U = 2 vv*/(v*v) - I`.
//!
//! With `δ = diag(first column of U)` and a rational diagonal `s` playing
//! the role of `√D`, the generating matrix is `A = δ⁻¹ U s` with weights
//! `p = δ*δ`. Its Krawtchouk matrices satisfy an involution and a
//! self-adjointness identity.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kg_system::{krawtchouk_guarded, KgSystem, KrawtchoukDegree};
use crate::matrix::{ExactMatrix, Matrix};
use crate::multiindex::DEFAULT_GUARD;
use crate::report::{Check, Report};
use crate::scalar::{GaussianRational, Rational, Ring};
use crate::sympow::bar_guarded;

/// The reflection fixing `v`. Fails on the zero vector.
pub fn reflection_from_vector(v: &[GaussianRational]) -> Result<ExactMatrix> {
    let norm: Rational = v.iter().map(GaussianRational::norm_sqr).sum();
    if norm.is_zero() {
        return Err(Error::ZeroVector);
    }
    let two_over = GaussianRational::real(Rational::from_integer(2.into()) / norm);
    let n = v.len();
    let u = Matrix::from_fn(n, n, |r, c| {
        let proj = &(&v[r] * &v[c].conjugate()) * &two_over;
        if r == c {
            &proj - &GaussianRational::one()
        } else {
            proj
        }
    });
    if u.adjoint() != u || &u * &u != ExactMatrix::identity(n) {
        return Err(Error::Identity("reflection is not a self-adjoint involution".into()));
    }
    Ok(u)
}

#[derive(Clone, Debug)]
pub struct ReflectionSystem {
    pub v: Vec<GaussianRational>,
    pub u: ExactMatrix,
    /// First column of `U`.
    pub delta: Vec<GaussianRational>,
    /// `√D`, real positive with `s_0 = 1`.
    pub scale: Vec<Rational>,
    pub system: KgSystem,
}

/// Builds `A = δ⁻¹ U s`, `p = δ*δ`, `D = s²` and checks the K-condition.
pub fn kg_from_reflection(v: &[GaussianRational], scale: &[Rational]) -> Result<ReflectionSystem> {
    let u = reflection_from_vector(v)?;
    let n = v.len();
    if scale.len() != n {
        return Err(Error::Scale(format!("{} scale entries for dimension {n}", scale.len())));
    }
    if let Some((i, s)) = scale.iter().enumerate().find(|(_, s)| !s.is_positive()) {
        return Err(Error::Scale(format!("s_{i} = {s} is not positive")));
    }
    if !scale[0].is_one() {
        return Err(Error::Scale(format!("s_0 = {} must be 1 so that D_00 = 1", scale[0])));
    }
    let delta = u.column(0);
    if let Some(row) = delta.iter().position(Ring::is_zero) {
        return Err(Error::ZeroPivot { row });
    }
    let p: Vec<GaussianRational> = delta.iter().map(|x| GaussianRational::real(x.norm_sqr())).collect();
    let total: Rational = p.iter().map(|x| x.re.clone()).sum();
    if !total.is_one() {
        return Err(Error::Identity(format!("trace of δ*δ is {total}")));
    }
    let inv_delta = delta.iter().map(GaussianRational::inv).collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_fn(n, n, |r, c| {
        &(&inv_delta[r] * u.get(r, c)) * &GaussianRational::real(scale[c].clone())
    });
    let d = scale.iter().map(|s| GaussianRational::real(s * s)).collect();
    let system = KgSystem::new(a, p, d).map_err(|e| Error::Identity(format!("{e}")))?;
    Ok(ReflectionSystem {
        v: v.to_vec(),
        u,
        delta,
        scale: scale.to_vec(),
        system,
    })
}

/// The two structural matrices of a reflection system at one degree.
#[derive(Clone, Debug)]
pub struct ReflectionCheck {
    pub kd: KrawtchoukDegree,
    /// `bar(δ* s⁻¹) Φ`, an involution.
    pub involution: ExactMatrix,
    /// `Φ B bar(δ*) bar(s)`, self-adjoint.
    pub self_adjoint: ExactMatrix,
    pub report: Report,
}

pub fn verify_reflection_properties(rs: &ReflectionSystem, degree: u32) -> Result<ReflectionCheck> {
    verify_reflection_properties_guarded(rs, degree, DEFAULT_GUARD)
}

pub fn verify_reflection_properties_guarded(
    rs: &ReflectionSystem,
    degree: u32,
    guard: usize,
) -> Result<ReflectionCheck> {
    let kd = krawtchouk_guarded(&rs.system, degree, guard)?;
    let delta_star: Vec<GaussianRational> = rs.delta.iter().map(GaussianRational::conjugate).collect();
    let scale: Vec<GaussianRational> = rs.scale.iter().cloned().map(GaussianRational::real).collect();
    let scaled = Matrix::diagonal(
        delta_star
            .iter()
            .zip(&scale)
            .map(|(x, s)| x.checked_div(s))
            .collect::<Result<Vec<_>>>()?,
    );
    let involution = &bar_guarded(&scaled, degree, guard)? * &kd.phi;
    let self_adjoint = &(&(&kd.phi * &kd.b) * &bar_guarded(&Matrix::diagonal(delta_star), degree, guard)?)
        * &bar_guarded(&Matrix::diagonal(scale), degree, guard)?;
    let mut report = Report::new();
    report.push(Check::matrices(
        "reflection_involution",
        &(&involution * &involution),
        &ExactMatrix::identity(kd.phi.rows()),
    ));
    report.push(Check::matrices(
        "reflection_self_adjoint",
        &self_adjoint.adjoint(),
        &self_adjoint,
    ));
    Ok(ReflectionCheck {
        kd,
        involution,
        self_adjoint,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn gs(xs: &[&str]) -> Vec<GaussianRational> {
        xs.iter().map(|s| g(s)).collect()
    }

    fn rats(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn reflection_examples() {
        let u = reflection_from_vector(&gs(&["1", "2i"])).unwrap();
        assert_eq!(
            u,
            ExactMatrix::from_rows(vec![gs(&["-3/5", "-4/5i"]), gs(&["4/5i", "3/5"])]).unwrap()
        );
        let u = reflection_from_vector(&gs(&["1", "-1", "-1", "-1"])).unwrap();
        let h = |x: i64| GaussianRational::ratio(x, 2);
        let signs = [[-1, -1, -1, -1], [-1, -1, 1, 1], [-1, 1, -1, 1], [-1, 1, 1, -1]];
        assert_eq!(
            u,
            ExactMatrix::from_rows(signs.iter().map(|r| r.iter().map(|&x| h(x)).collect()).collect()).unwrap()
        );
        assert_eq!(
            reflection_from_vector(&gs(&["1", "0"])).unwrap(),
            ExactMatrix::from_ints(&[[1, 0], [0, -1]])
        );
        assert_eq!(reflection_from_vector(&gs(&["0", "0"])).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn generated_system_examples() {
        let rs = kg_from_reflection(&gs(&["1", "2i"]), &rats(&[1, 6])).unwrap();
        assert_eq!(
            rs.system.a(),
            &ExactMatrix::from_rows(vec![gs(&["1", "8i"]), gs(&["1", "-9/2i"])]).unwrap()
        );
        assert_eq!(rs.system.p(), gs(&["9/25", "16/25"]).as_slice());
        assert_eq!(rs.system.d(), gs(&["1", "36"]).as_slice());
        assert_eq!(rs.delta, gs(&["-3/5", "4/5i"]));

        let rs = kg_from_reflection(&gs(&["1", "-1", "-1", "-1"]), &rats(&[1, 1, 1, 1])).unwrap();
        assert_eq!(
            rs.system.a(),
            &ExactMatrix::from_ints(&[[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
        );
        assert_eq!(rs.system.p(), gs(&["1/4", "1/4", "1/4", "1/4"]).as_slice());
        assert_eq!(rs.system.d(), gs(&["1", "1", "1", "1"]).as_slice());
    }

    #[test]
    fn generated_system_errors() {
        assert_eq!(
            kg_from_reflection(&gs(&["1", "0"]), &rats(&[1, 1])).unwrap_err(),
            Error::ZeroPivot { row: 1 }
        );
        assert!(matches!(
            kg_from_reflection(&gs(&["1", "2i"]), &rats(&[1, 0])),
            Err(Error::Scale(_))
        ));
        assert!(matches!(
            kg_from_reflection(&gs(&["1", "2i"]), &rats(&[2, 6])),
            Err(Error::Scale(_))
        ));
        assert!(matches!(
            kg_from_reflection(&gs(&["1", "2i"]), &rats(&[1])),
            Err(Error::Scale(_))
        ));
        // |v_0|^2 = |v|^2 / 2 puts a zero at U_00
        assert_eq!(
            kg_from_reflection(&gs(&["1", "1"]), &rats(&[1, 1])).unwrap_err(),
            Error::ZeroPivot { row: 0 }
        );
    }

    #[test]
    fn complex_example_degree_three() {
        let rs = kg_from_reflection(&gs(&["1", "2i"]), &rats(&[1, 6])).unwrap();
        let chk = verify_reflection_properties(&rs, 3).unwrap();
        assert!(chk.report.passed(), "{:?}", chk.report);
        let phi = ExactMatrix::from_rows(vec![
            gs(&["1", "1", "1", "1"]),
            gs(&["-24i", "-23/2i", "1i", "27/2i"]),
            gs(&["-192", "8", "207/4", "-243/4"]),
            gs(&["512i", "-288i", "162i", "-729/8i"]),
        ])
        .unwrap();
        assert_eq!(chk.kd.phi, phi);
        let involution = ExactMatrix::from_rows(vec![
            gs(&["-27/125", "-27/125", "-27/125", "-27/125"]),
            gs(&["-144/125", "-69/125", "6/125", "81/125"]),
            gs(&["-256/125", "32/375", "69/125", "-81/125"]),
            gs(&["-4096/3375", "256/375", "-48/125", "27/125"]),
        ])
        .unwrap();
        assert_eq!(chk.involution, involution);
        let hermitian = ExactMatrix::from_rows(vec![
            gs(&["-27/125", "-648/125i", "5184/125", "13824/125i"]),
            gs(&["648/125i", "-7452/125", "5184/125i", "-186624/125"]),
            gs(&["5184/125", "-5184/125i", "268272/125", "-839808/125i"]),
            gs(&["-13824/125i", "-186624/125", "839808/125i", "1259712/125"]),
        ])
        .unwrap();
        assert_eq!(chk.self_adjoint, hermitian);
    }

    #[test]
    fn hadamard_example_squares_to_sixteen() {
        let rs = kg_from_reflection(&gs(&["1", "-1", "-1", "-1"]), &rats(&[1, 1, 1, 1])).unwrap();
        let chk = verify_reflection_properties(&rs, 2).unwrap();
        assert!(chk.report.passed());
        let phi = &chk.kd.phi;
        assert_eq!(phi * phi, ExactMatrix::identity(10).scale(&GaussianRational::from(16)));
    }
}
