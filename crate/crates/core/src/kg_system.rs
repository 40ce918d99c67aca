//! Generating matrices satisfying the K-condition and the Krawtchouk
//! matrices they induce.
//!
//! A generating matrix `A` has first column all ones and satisfies
//! `A* p A = D` for a diagonal probability matrix `p` and a positive
//! diagonal `D` with `D_00 = 1`. Its degree-`N` Krawtchouk matrix is
//! `Φ = Ā*`, orthogonal in the sense `Φ B p̄ Φ* = B D̄`.
//!
//! The unitary `U = √p A / √D` is never formed; the K-condition identity
//! certifies it exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};
use crate::multiindex::{IndexTable, DEFAULT_GUARD};
use crate::report::{Check, Report};
use crate::scalar::{GaussianRational, Ring, UniPoly};
use crate::sympow::{bar_guarded, column_diagonals, dimension_of, gamma_guarded, multinomial_diag_guarded};

/// A generating matrix with its weights `p` and squared norms `D`, both
/// stored as diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgSystem {
    a: ExactMatrix,
    p: Vec<GaussianRational>,
    d: Vec<GaussianRational>,
}

impl KgSystem {
    /// Validates the triple; any violated invariant is an error carrying the
    /// failing checks.
    pub fn new(a: ExactMatrix, p: Vec<GaussianRational>, d: Vec<GaussianRational>) -> Result<Self> {
        let report = verify_k_condition(&a, &p, &d);
        if !report.passed() {
            let names: Vec<String> = report
                .violations()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(Error::System(names.join("; ")));
        }
        Ok(Self { a, p, d })
    }

    /// Builds the system from `A` alone, reading the weights off `A⁻¹`.
    pub fn from_generating_matrix(a: ExactMatrix) -> Result<Self> {
        let (p, d) = infer_weights(&a)?;
        Ok(Self { a, p, d })
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn p(&self) -> &[GaussianRational] {
        &self.p
    }

    pub fn d(&self) -> &[GaussianRational] {
        &self.d
    }

    pub fn p_matrix(&self) -> ExactMatrix {
        Matrix::diagonal(self.p.clone())
    }

    pub fn d_matrix(&self) -> ExactMatrix {
        Matrix::diagonal(self.d.clone())
    }

    /// `d`, one less than the number of outcomes.
    pub fn dim(&self) -> usize {
        self.a.rows() - 1
    }
}

fn first_bad(xs: &[GaussianRational], ok: impl Fn(&GaussianRational) -> bool) -> Option<(usize, &GaussianRational)> {
    xs.iter().enumerate().find(|(_, x)| !ok(x))
}

/// Checks every K-condition invariant and reports each one.
pub fn verify_k_condition(a: &ExactMatrix, p: &[GaussianRational], d: &[GaussianRational]) -> Report {
    let mut report = Report::new();
    let n = a.rows();
    if !a.is_square() || n == 0 || p.len() != n || d.len() != n {
        report.push(Check::fail(
            "shape",
            format!(
                "A is {}x{}, p has {} entries, D has {}",
                a.rows(),
                a.cols(),
                p.len(),
                d.len()
            ),
        ));
        return report;
    }
    report.push(Check::pass("shape", format!("extent {n}")));

    let one = GaussianRational::one();
    report.push(match (0..n).find(|&i| a.get(i, 0) != &one) {
        None => Check::pass("first_column", "A_i0 = 1 for all i"),
        Some(i) => Check::fail("first_column", format!("A_{i}0 = {:?}", a.get(i, 0))),
    });

    report.push(match first_bad(p, GaussianRational::is_positive_real) {
        None => Check::pass("weights_positive", "all p_i real and positive"),
        Some((i, x)) => Check::fail("weights_positive", format!("p_{i} = {x:?}")),
    });

    let total = p.iter().fold(GaussianRational::zero(), |acc, x| &acc + x);
    report.push(if total == one {
        Check::pass("weights_sum", "sum of p_i is 1")
    } else {
        Check::fail("weights_sum", format!("sum of p_i is {total:?}"))
    });

    report.push(match first_bad(d, GaussianRational::is_positive_real) {
        None if d[0] == one => Check::pass("norms_positive", "all D_ii real and positive, D_00 = 1"),
        None => Check::fail("norms_positive", format!("D_00 = {:?}, expected 1", d[0])),
        Some((i, x)) => Check::fail("norms_positive", format!("D_{i}{i} = {x:?}")),
    });

    let gram = gram(a, p);
    report.push(match off_diagonal_nonzero(&gram) {
        None => Check::pass("gram_diagonal", "A*pA is diagonal"),
        Some((r, c)) => Check::fail("gram_diagonal", format!("(A*pA)_({r},{c}) = {:?}", gram.get(r, c))),
    });
    report.push(Check::matrices(
        "gram_equals_norms",
        &gram,
        &Matrix::diagonal(d.to_vec()),
    ));
    report
}

/// `A* diag(p) A`.
fn gram(a: &ExactMatrix, p: &[GaussianRational]) -> ExactMatrix {
    let weighted = Matrix::from_fn(a.rows(), a.cols(), |r, c| &p[r] * a.get(r, c));
    &a.adjoint() * &weighted
}

fn off_diagonal_nonzero(m: &ExactMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| r != c && !m.get(r, c).is_zero())
}

/// Recovers `(p, D)` from a generating matrix: with first column all ones
/// and `D_00 = 1`, row 0 of `A⁻¹ = D⁻¹ A* p` is the weight vector.
pub fn infer_weights(a: &ExactMatrix) -> Result<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    dimension_of(a)?;
    let one = GaussianRational::one();
    if let Some(i) = (0..a.rows()).find(|&i| a.get(i, 0) != &one) {
        return Err(Error::System(format!(
            "first column entry A_{i}0 = {:?} is not 1",
            a.get(i, 0)
        )));
    }
    let inv = a.inverse()?;
    let p = inv.row(0).to_vec();
    if let Some((i, x)) = first_bad(&p, GaussianRational::is_positive_real) {
        return Err(Error::Weights(format!("p_{i} = {x:?} is not positive real")));
    }
    let g = gram(a, &p);
    if let Some((row, col)) = off_diagonal_nonzero(&g) {
        return Err(Error::NotOrthogonal { row, col });
    }
    let d = g.diagonal_entries();
    if let Some((i, x)) = first_bad(&d, GaussianRational::is_positive_real) {
        return Err(Error::Weights(format!("D_{i}{i} = {x:?} is not positive real")));
    }
    Ok((p, d))
}

/// `Λ_j = diag(column j of A)` and `X_j = A⁻¹ Λ_j A` for every `j`.
pub fn quantum_variables(a: &ExactMatrix) -> Result<(Vec<ExactMatrix>, Vec<ExactMatrix>)> {
    let lambdas = column_diagonals(a)?;
    let inv = a.inverse()?;
    let xs = lambdas.iter().map(|l| &(&inv * l) * a).collect();
    Ok((lambdas, xs))
}

/// Everything derived from a system at one degree.
#[derive(Clone, Debug)]
pub struct KrawtchoukDegree {
    pub degree: u32,
    pub table: IndexTable,
    pub phi: ExactMatrix,
    pub b: ExactMatrix,
    pub pbar: ExactMatrix,
    pub dbar: ExactMatrix,
    pub lambda: Vec<ExactMatrix>,
    pub x: Vec<ExactMatrix>,
    pub gamma_lambda: Vec<ExactMatrix>,
    pub gamma_x: Vec<ExactMatrix>,
}

pub fn krawtchouk(sys: &KgSystem, degree: u32) -> Result<KrawtchoukDegree> {
    krawtchouk_guarded(sys, degree, DEFAULT_GUARD)
}

pub fn krawtchouk_guarded(sys: &KgSystem, degree: u32, guard: usize) -> Result<KrawtchoukDegree> {
    let table = IndexTable::with_guard(sys.dim(), degree, guard)?;
    let phi = bar_guarded(sys.a(), degree, guard)?.adjoint();
    let (lambda, x) = quantum_variables(sys.a())?;
    let gamma_lambda = lambda
        .iter()
        .map(|l| gamma_guarded(l, degree, guard))
        .collect::<Result<Vec<_>>>()?;
    let gamma_x = x
        .iter()
        .map(|m| gamma_guarded(m, degree, guard))
        .collect::<Result<Vec<_>>>()?;
    Ok(KrawtchoukDegree {
        degree,
        phi,
        b: multinomial_diag_guarded(sys.dim(), degree, guard)?,
        pbar: bar_guarded(&sys.p_matrix(), degree, guard)?,
        dbar: bar_guarded(&sys.d_matrix(), degree, guard)?,
        table,
        lambda,
        x,
        gamma_lambda,
        gamma_x,
    })
}

fn diagonal_inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    Ok(Matrix::diagonal(
        m.diagonal_entries()
            .iter()
            .map(GaussianRational::inv)
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// `Φ B p̄ Φ* = B D̄`.
pub fn check_orthogonality(kd: &KrawtchoukDegree) -> Check {
    let lhs = &(&(&kd.phi * &kd.b) * &kd.pbar) * &kd.phi.adjoint();
    Check::matrices("orthogonality", &lhs, &(&kd.b * &kd.dbar))
}

/// `Φ* (B D̄)⁻¹ Φ = (B p̄)⁻¹`.
pub fn check_dual_orthogonality(kd: &KrawtchoukDegree) -> Check {
    let (norms, weights) = match (
        diagonal_inverse(&(&kd.b * &kd.dbar)),
        diagonal_inverse(&(&kd.b * &kd.pbar)),
    ) {
        (Ok(n), Ok(w)) => (n, w),
        _ => return Check::fail("dual_orthogonality", "B D̄ or B p̄ has a zero diagonal entry"),
    };
    let lhs = &(&kd.phi.adjoint() * &norms) * &kd.phi;
    Check::matrices("dual_orthogonality", &lhs, &weights)
}

/// Both orthogonality identities.
pub fn verify_orthogonality(kd: &KrawtchoukDegree) -> Report {
    Report {
        checks: alloc::vec![check_orthogonality(kd), check_dual_orthogonality(kd)],
    }
}

/// A recurrence/spectrum pair with `Rec·Φ = Φ·Spec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecSpec {
    pub variable: usize,
    pub order: usize,
    pub rec: ExactMatrix,
    pub spec: ExactMatrix,
}

impl RecSpec {
    pub fn check(&self, phi: &ExactMatrix) -> Check {
        Check::matrices(
            &format!("recurrence[j={},k={}]", self.variable, self.order),
            &(&self.rec * phi),
            &(phi * &self.spec),
        )
    }
}

/// `Rec = Γ(X_j)*`, `Spec = Γ(Λ_j)*`; fails if `Rec·Φ ≠ Φ·Spec`.
pub fn recurrence_identity(kd: &KrawtchoukDegree, j: usize) -> Result<RecSpec> {
    if j >= kd.x.len() {
        return Err(Error::Index(format!("variable {j} out of range 0..{}", kd.x.len())));
    }
    let pair = RecSpec {
        variable: j,
        order: 1,
        rec: kd.gamma_x[j].adjoint(),
        spec: kd.gamma_lambda[j].adjoint(),
    };
    ensure(&pair, &kd.phi)?;
    Ok(pair)
}

fn ensure(pair: &RecSpec, phi: &ExactMatrix) -> Result<()> {
    let check = pair.check(phi);
    if check.pass {
        Ok(())
    } else {
        Err(Error::Identity(format!("{}: {}", check.name, check.detail)))
    }
}

/// Recurrence pairs of orders `0..=max_order` for variable `j`, read off
/// the `v^k` coefficients of the powers of `I + v X_j` and `I + v Λ_j`.
pub fn higher_recurrences(sys: &KgSystem, degree: u32, j: usize, max_order: usize) -> Result<Vec<RecSpec>> {
    higher_recurrences_guarded(sys, degree, j, max_order, DEFAULT_GUARD)
}

pub fn higher_recurrences_guarded(
    sys: &KgSystem,
    degree: u32,
    j: usize,
    max_order: usize,
    guard: usize,
) -> Result<Vec<RecSpec>> {
    if max_order > degree as usize {
        return Err(Error::Index(format!("order {max_order} exceeds degree {degree}")));
    }
    let (lambda, x) = quantum_variables(sys.a())?;
    if j >= x.len() {
        return Err(Error::Index(format!("variable {j} out of range 0..{}", x.len())));
    }
    let phi = bar_guarded(sys.a(), degree, guard)?.adjoint();
    let identity = ExactMatrix::identity(x.len());
    let xbar = bar_guarded(&Matrix::<UniPoly>::affine(&identity, &x[j])?, degree, guard)?;
    let lbar = bar_guarded(&Matrix::<UniPoly>::affine(&identity, &lambda[j])?, degree, guard)?;
    (0..=max_order)
        .map(|k| {
            let pair = RecSpec {
                variable: j,
                order: k,
                rec: xbar.coefficient(k).adjoint(),
                spec: lbar.coefficient(k).adjoint(),
            };
            ensure(&pair, &phi)?;
            Ok(pair)
        })
        .collect()
}

/// For `1 ≤ j ≤ d`, `Spec` of variable `j` is the diagonal formed by the
/// row of `Φ` labelled by `x_j`.
pub fn check_spectrum_row(kd: &KrawtchoukDegree, j: usize) -> Check {
    let name = format!("spectrum_row[j={j}]");
    if j == 0 || j >= kd.gamma_lambda.len() || kd.degree == 0 {
        return Check::fail(&name, "needs 1 <= j <= d and degree >= 1");
    }
    let spec = kd.gamma_lambda[j].adjoint();
    Check::matrices(&name, &spec, &Matrix::diagonal(kd.phi.row(j).to_vec()))
}

/// All first-order pairs plus every higher order up to `N`, for each
/// variable, and the spectrum-row identity.
pub fn verify_recurrences(sys: &KgSystem, kd: &KrawtchoukDegree, guard: usize) -> Report {
    let mut report = Report::new();
    for j in 0..kd.x.len() {
        let first = RecSpec {
            variable: j,
            order: 1,
            rec: kd.gamma_x[j].adjoint(),
            spec: kd.gamma_lambda[j].adjoint(),
        };
        report.push(first.check(&kd.phi));
        match higher_recurrences_guarded(sys, kd.degree, j, kd.degree as usize, guard) {
            Ok(pairs) => {
                let agrees = pairs.get(1).is_none_or(|p| p.rec == first.rec && p.spec == first.spec);
                report.push(if agrees {
                    Check::pass(
                        &format!("higher_recurrences[j={j}]"),
                        format!("orders 0..={} hold", kd.degree),
                    )
                } else {
                    Check::fail(
                        &format!("higher_recurrences[j={j}]"),
                        "order-1 coefficients differ from the gamma pair",
                    )
                });
            }
            Err(e) => report.push(Check::fail(&format!("higher_recurrences[j={j}]"), format!("{e}"))),
        }
        if j >= 1 && kd.degree >= 1 {
            report.push(check_spectrum_row(kd, j));
        }
    }
    report
}

/// The symmetric binomial system `A = [[1,1],[1,-1]]`, `p = (1/2, 1/2)`,
/// `D = I` at one degree, with its polynomial views.
#[derive(Clone, Debug)]
pub struct ClassicalBinomial {
    pub system: KgSystem,
    pub kd: KrawtchoukDegree,
    /// `(1+v)^(N-j) (1-v)^j` for each column `j`.
    pub generating: Vec<UniPoly>,
}

pub fn classical_system() -> KgSystem {
    let half = GaussianRational::ratio(1, 2);
    KgSystem::new(
        ExactMatrix::from_ints(&[[1, 1], [1, -1]]),
        alloc::vec![half.clone(), half],
        alloc::vec![GaussianRational::one(), GaussianRational::one()],
    )
    .expect("symmetric binomial system is valid")
}

pub fn classical_binomial(degree: u32) -> Result<ClassicalBinomial> {
    let system = classical_system();
    let kd = krawtchouk(&system, degree)?;
    let plus = UniPoly::from_ints(&[1, 1]);
    let minus = UniPoly::from_ints(&[1, -1]);
    let generating = (0..=degree)
        .map(|j| plus.pow(degree - j).mul_ref(&minus.pow(j)))
        .collect();
    Ok(ClassicalBinomial { system, kd, generating })
}

impl ClassicalBinomial {
    pub fn degree(&self) -> u32 {
        self.kd.degree
    }

    /// `K_n(j)`, the entry of `Φ` at row `n`, column `j`.
    pub fn k(&self, n: usize, j: usize) -> &GaussianRational {
        self.kd.phi.get(n, j)
    }

    /// Column `j` of `Φ` equals the coefficient list of `(1+v)^(N-j)(1-v)^j`.
    pub fn check_generating_functions(&self) -> Check {
        let n = self.degree() as usize;
        for (j, g) in self.generating.iter().enumerate() {
            for row in 0..=n {
                if &g.coeff(row) != self.k(row, j) {
                    return Check::fail(
                        "generating_function",
                        format!(
                            "column {j}, v^{row}: polynomial {:?}, Phi {:?}",
                            g.coeff(row),
                            self.k(row, j)
                        ),
                    );
                }
            }
        }
        Check::pass("generating_function", "columns match (1+v)^(N-j)(1-v)^j")
    }

    /// `(N-(n-1)) K_{n-1} + (n+1) K_{n+1} = x K_n` at `x = N - 2j`.
    pub fn check_three_term(&self) -> Check {
        let big_n = i64::from(self.degree());
        for n in 1..big_n.max(1) {
            for j in 0..=big_n {
                let x = GaussianRational::from(big_n - 2 * j);
                let (nu, ju) = (n as usize, j as usize);
                let lhs = &(&GaussianRational::from(big_n - (n - 1)) * self.k(nu - 1, ju))
                    + &(&GaussianRational::from(n + 1) * self.k(nu + 1, ju));
                let rhs = &x * self.k(nu, ju);
                if lhs != rhs {
                    return Check::fail("three_term", format!("n={n}, j={j}: left {lhs:?}, right {rhs:?}"));
                }
            }
        }
        Check::pass("three_term", "holds at every grid point")
    }

    /// `K_1(j) = N - 2j`.
    pub fn check_first_row(&self) -> Check {
        let n = i64::from(self.degree());
        if n == 0 {
            return Check::pass("first_polynomial", "degree 0 has no K_1");
        }
        for j in 0..=n {
            if self.k(1, j as usize) != &GaussianRational::from(n - 2 * j) {
                return Check::fail("first_polynomial", format!("K_1({j}) = {:?}", self.k(1, j as usize)));
            }
        }
        Check::pass("first_polynomial", "K_1(j) = N - 2j")
    }

    /// `Φ² = 2^N I`.
    pub fn check_involution(&self) -> Check {
        let scale = GaussianRational::from_integer(&(num_bigint::BigInt::one() << self.degree() as usize));
        let target = ExactMatrix::identity(self.kd.phi.rows()).scale(&scale);
        Check::matrices("classical_involution", &(&self.kd.phi * &self.kd.phi), &target)
    }

    /// `(ΦB)* = ΦB`.
    pub fn check_symmetry(&self) -> Check {
        let pb = &self.kd.phi * &self.kd.b;
        Check::matrices("classical_symmetry", &pb.adjoint(), &pb)
    }

    pub fn report(&self) -> Report {
        Report {
            checks: alloc::vec![
                self.check_generating_functions(),
                self.check_three_term(),
                self.check_first_row(),
                self.check_involution(),
                self.check_symmetry(),
            ],
        }
    }
}

/// True when `sys` is the symmetric binomial system.
pub fn is_classical(sys: &KgSystem) -> bool {
    sys == &classical_system()
}
