//! State constructors, validation and Haar-random sampling.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix, C64};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;

/// Validated bipartite density matrix on `C^{d_a} ⊗ C^{d_b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    d_a: usize,
    d_b: usize,
}

impl DensityMatrix {
    /// Checks dimension, hermiticity, unit trace and positivity, in that order.
    pub fn validate(mat: ComplexMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        let dim = d_a * d_b;
        if d_a == 0 || d_b == 0 || !mat.is_square() || mat.rows() != dim {
            return Err(Error::Factorization {
                dim: mat.rows(),
                d_a,
                d_b,
            });
        }
        let deviation = mat.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = mat.trace();
        let deviation = (trace - C64::new(1.0, 0.0)).norm();
        if deviation > TRACE_TOL {
            return Err(Error::Trace { deviation });
        }
        let eig = hermitian_eig(&mat)?;
        let min_eigenvalue = *eig.values.last().expect("non-empty spectrum");
        if min_eigenvalue < -POSITIVITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { mat, d_a, d_b })
    }

    pub fn maximally_mixed(d_a: usize, d_b: usize) -> Self {
        let n = d_a * d_b;
        Self {
            mat: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            d_a,
            d_b,
        }
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// `U ρ U^dagger` for a unitary `u` on the full space.
    pub fn transform(&self, u: &ComplexMatrix) -> Result<Self> {
        let dim = self.d_a * self.d_b;
        if u.dims() != (dim, dim) {
            return Err(Error::DimensionMismatch {
                left: u.dims(),
                right: self.mat.dims(),
            });
        }
        let deviation = u.unitary_deviation();
        if deviation > 1e-10 {
            return Err(Error::NotUnitary { deviation });
        }
        let mat = &(u * &self.mat) * &u.adjoint();
        Ok(Self {
            mat: (&mat + &mat.adjoint()).scale_real(0.5),
            d_a: self.d_a,
            d_b: self.d_b,
        })
    }

    /// `(u_a ⊗ u_b) ρ (u_a ⊗ u_b)^dagger`.
    pub fn local_transform(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        self.transform(&u_a.kron(u_b))
    }
}

/// Normalized state vector on `C^{d_a} ⊗ C^{d_b}`, index `i * d_b + j` for `|i>⊗|j>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    d_a: usize,
    d_b: usize,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, d_a: usize, d_b: usize) -> Result<Self> {
        Self::check_len(&amplitudes, d_a, d_b)?;
        let norm = norm(&amplitudes);
        let deviation = (norm - 1.0).abs();
        if !(deviation <= NORM_TOL) {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self {
            amplitudes,
            d_a,
            d_b,
        })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(amplitudes: Vec<C64>, d_a: usize, d_b: usize) -> Result<Self> {
        Self::check_len(&amplitudes, d_a, d_b)?;
        let n = norm(&amplitudes);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
            d_a,
            d_b,
        })
    }

    fn check_len(amplitudes: &[C64], d_a: usize, d_b: usize) -> Result<()> {
        if d_a == 0 || d_b == 0 || amplitudes.len() != d_a * d_b {
            return Err(Error::Factorization {
                dim: amplitudes.len(),
                d_a,
                d_b,
            });
        }
        Ok(())
    }

    /// `a|00> + b|01> + c|10> + d|11>`, normalized.
    pub fn two_qubit(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        Self::normalized(vec![a, b, c, d], 2, 2)
    }

    /// Computational basis vector `|i>⊗|j>`.
    pub fn product_basis(i: usize, j: usize, d_a: usize, d_b: usize) -> Self {
        assert!(i < d_a && j < d_b, "basis index out of range");
        let mut amplitudes = vec![C64::new(0.0, 0.0); d_a * d_b];
        amplitudes[i * d_b + j] = C64::new(1.0, 0.0);
        Self {
            amplitudes,
            d_a,
            d_b,
        }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn is_two_qubit(&self) -> bool {
        self.d_a == 2 && self.d_b == 2
    }

    /// Amplitude matrix `M[i][j] = <ij|ψ>` of shape `d_a x d_b`.
    pub fn amplitude_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.d_a, self.d_b, |i, j| self.amplitudes[i * self.d_b + j])
    }

    /// `|ψ><ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            mat: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes),
            d_a: self.d_a,
            d_b: self.d_b,
        }
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Seed for the Monte Carlo generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Independent seed for stream `index`, so parallel workers never share generator state.
    pub fn stream(self, index: u64) -> RngSeed {
        // splitmix64 finalizer over seed + index * golden gamma
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }

    pub fn rng(self) -> Xoshiro256PlusPlus {
        Xoshiro256PlusPlus::seed_from_u64(self.0)
    }
}

/// `|β_ab> = (|0,b> + (-1)^a |1,1⊕b>)/√2`.
pub fn bell_state(a_bit: u8, b_bit: u8) -> PureState {
    assert!(a_bit < 2 && b_bit < 2, "Bell labels are bits");
    let b = b_bit as usize;
    let sign = if a_bit == 0 { 1.0 } else { -1.0 };
    let mut amplitudes = vec![C64::new(0.0, 0.0); 4];
    amplitudes[b] = C64::new(FRAC_1_SQRT_2, 0.0);
    amplitudes[2 + (1 - b)] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
    PureState {
        amplitudes,
        d_a: 2,
        d_b: 2,
    }
}

/// `(|00> + |01> + |10>)/√3`, the asymmetric pure state used for the pseudo-pure sweep.
pub fn three_term_state() -> PureState {
    let s = 1.0 / 3f64.sqrt();
    PureState {
        amplitudes: vec![C64::new(s, 0.0), C64::new(s, 0.0), C64::new(s, 0.0), C64::new(0.0, 0.0)],
        d_a: 2,
        d_b: 2,
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability { name, value: p });
    }
    Ok(())
}

fn mixture(terms: &[(f64, &PureState)]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(4, 4);
    for (w, psi) in terms {
        if *w != 0.0 {
            acc = &acc + &psi.density().mat.scale_real(*w);
        }
    }
    acc
}

/// `(1-p) I/4 + p |ψ><ψ|` for a two-qubit `ψ`.
pub fn pseudo_pure(p: f64, psi: &PureState) -> Result<DensityMatrix> {
    check_probability("p", p)?;
    if !psi.is_two_qubit() {
        return Err(Error::UnsupportedDimension {
            expected: 4,
            actual: psi.amplitudes.len(),
        });
    }
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    let mat = &noise + &psi.density().mat.scale_real(p);
    DensityMatrix::validate(mat, 2, 2)
}

/// Werner state: pseudo-pure mixture with `|β_00>`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    pseudo_pure(p, &bell_state(0, 0))
}

/// `p |β_11><β_11| + (1-p)/2 (|β_01><β_01| + |β_00><β_00|)`.
pub fn bell_diag_rho1(p: f64) -> Result<DensityMatrix> {
    check_probability("p", p)?;
    let q = (1.0 - p) / 2.0;
    let mat = mixture(&[(p, &bell_state(1, 1)), (q, &bell_state(0, 1)), (q, &bell_state(0, 0))]);
    DensityMatrix::validate(mat, 2, 2)
}

/// `p |β_11><β_11| + (1-p) |β_01><β_01|`.
pub fn bell_diag_rho2(p: f64) -> Result<DensityMatrix> {
    check_probability("p", p)?;
    let mat = mixture(&[(p, &bell_state(1, 1)), (1.0 - p, &bell_state(0, 1))]);
    DensityMatrix::validate(mat, 2, 2)
}

/// Haar-random pure state from a normalized vector of complex Gaussians (Box–Muller).
pub fn sample_haar(rng: &mut impl Rng, d_a: usize, d_b: usize) -> PureState {
    let n = d_a * d_b;
    let amplitudes: Vec<C64> = (0..n)
        .map(|_| {
            let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
            let u2: f64 = rng.random::<f64>();
            let r = (-2.0 * u1.ln()).sqrt();
            C64::from_polar(r, TAU * u2)
        })
        .collect();
    let nrm = norm(&amplitudes);
    PureState {
        amplitudes: amplitudes.into_iter().map(|z| z / nrm).collect(),
        d_a,
        d_b,
    }
}

/// Deterministic Haar sample for a given seed.
pub fn haar_random_pure(d_a: usize, d_b: usize, seed: RngSeed) -> Result<PureState> {
    if d_a < 2 || d_b < 2 {
        return Err(Error::Invalid(format!(
            "Haar sampling needs local dimensions >= 2, got {d_a}x{d_b}"
        )));
    }
    Ok(sample_haar(&mut seed.rng(), d_a, d_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::test_util::random_unitary;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn assert_amps(psi: &PureState, expected: [f64; 4]) {
        for (z, e) in psi.amplitudes().iter().zip(expected) {
            assert!((z - c(e)).norm() < 1e-15, "{:?} vs {:?}", psi.amplitudes(), expected);
        }
    }

    fn spectrum(rho: &DensityMatrix) -> Vec<f64> {
        hermitian_eig(rho.mat()).unwrap().values
    }

    #[test]
    fn bell_states() {
        let h = FRAC_1_SQRT_2;
        assert_amps(&bell_state(0, 0), [h, 0.0, 0.0, h]);
        assert_amps(&bell_state(1, 1), [0.0, h, -h, 0.0]);
        assert_amps(&bell_state(0, 1), [0.0, h, h, 0.0]);
        assert_amps(&bell_state(1, 0), [h, 0.0, 0.0, -h]);
    }

    #[test]
    fn pseudo_pure_limits() {
        let b = bell_state(0, 0);
        let mixed = pseudo_pure(0.0, &b).unwrap();
        assert!(mixed.mat().max_abs_diff(DensityMatrix::maximally_mixed(2, 2).mat()) < 1e-16);
        let pure = pseudo_pure(1.0, &b).unwrap();
        assert!(pure.mat().max_abs_diff(b.density().mat()) < 1e-16);

        let half = spectrum(&pseudo_pure(0.5, &b).unwrap());
        for (x, e) in half.iter().zip([0.625, 0.125, 0.125, 0.125]) {
            assert_relative_eq!(*x, e, epsilon = 1e-14);
        }
        assert!(matches!(pseudo_pure(1.5, &b), Err(Error::Probability { .. })));
        assert!(matches!(pseudo_pure(-0.1, &b), Err(Error::Probability { .. })));
    }

    #[test]
    fn rho1_examples() {
        let r1 = bell_diag_rho1(1.0).unwrap();
        assert!(r1.mat().max_abs_diff(bell_state(1, 1).density().mat()) < 1e-16);
        let r0 = bell_diag_rho1(0.0).unwrap();
        let expected = (&bell_state(0, 1).density().mat + &bell_state(0, 0).density().mat).scale_real(0.5);
        assert!(r0.mat().max_abs_diff(&expected) < 1e-16);

        let third = bell_diag_rho1(1.0 / 3.0).unwrap();
        for (x, e) in spectrum(&third).iter().zip([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]) {
            assert_relative_eq!(*x, e, epsilon = 1e-14);
        }
        assert!(bell_diag_rho1(2.0).is_err());
    }

    #[test]
    fn rho2_examples() {
        // (|01><01| + |10><10|)/2 by expanding the two Bell projectors by hand:
        // β11, β01 = (|01> ∓ |10>)/√2; the ±|01><10| cross terms cancel.
        let expected = ComplexMatrix::from_real_diag(&[0.0, 0.5, 0.5, 0.0]);
        assert!(bell_diag_rho2(0.5).unwrap().mat().max_abs_diff(&expected) < 1e-15);
        assert!(bell_diag_rho2(1.0).unwrap().mat().max_abs_diff(bell_state(1, 1).density().mat()) < 1e-16);
        assert!(bell_diag_rho2(0.0).unwrap().mat().max_abs_diff(bell_state(0, 1).density().mat()) < 1e-16);
        assert!(bell_diag_rho2(f64::NAN).is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(DensityMatrix::validate(ComplexMatrix::identity(4).scale_real(0.25), 2, 2).is_ok());
        let err = DensityMatrix::validate(ComplexMatrix::identity(2), 2, 1).unwrap_err();
        assert!(matches!(err, Error::Trace { deviation } if (deviation - 1.0).abs() < 1e-15));
        let err = DensityMatrix::validate(ComplexMatrix::from_real_diag(&[1.5, -0.5, 0.0, 0.0]), 2, 2)
            .unwrap_err();
        assert!(matches!(err, Error::NotPositive { min_eigenvalue } if (min_eigenvalue + 0.5).abs() < 1e-15));
        let mut skew = ComplexMatrix::identity(4).scale_real(0.25);
        skew[(0, 1)] = c(0.1);
        assert!(matches!(DensityMatrix::validate(skew, 2, 2), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            DensityMatrix::validate(ComplexMatrix::identity(4).scale_real(0.25), 2, 3),
            Err(Error::Factorization { .. })
        ));
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        assert!(matches!(
            PureState::new(vec![c(1.0), c(1.0), c(0.0), c(0.0)], 2, 2),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureState::normalized(vec![c(0.0); 4], 2, 2).is_err());
        assert!(PureState::new(vec![c(1.0)], 2, 2).is_err());
    }

    #[test]
    fn constructors_pass_validation() {
        for p in [0.0, 0.3, 0.5, 1.0] {
            for rho in [werner(p), bell_diag_rho1(p), bell_diag_rho2(p), pseudo_pure(p, &three_term_state())] {
                let rho = rho.unwrap();
                assert!(DensityMatrix::validate(rho.mat().clone(), 2, 2).is_ok());
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                assert!(DensityMatrix::validate(bell_state(a, b).density().into_mat(), 2, 2).is_ok());
            }
        }
    }

    #[test]
    fn haar_determinism_and_norm() {
        let s = RngSeed(0xDEC0DE);
        let a = haar_random_pure(2, 2, s).unwrap();
        let b = haar_random_pure(2, 2, s).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, haar_random_pure(2, 2, s.stream(0)).unwrap());
        for i in 0..100 {
            let psi = haar_random_pure(3, 2, s.stream(i)).unwrap();
            assert!((norm(psi.amplitudes()) - 1.0).abs() < 1e-12);
        }
        assert!(haar_random_pure(1, 2, s).is_err());
    }

    #[test]
    fn haar_first_amplitude_mean() {
        let n = 100_000u64;
        let mean = (0..n)
            .map(|i| haar_random_pure(2, 2, RngSeed(7).stream(i)).unwrap().amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.25).abs() < 0.005, "mean {mean}");
    }

    #[test]
    fn transform_rejects_non_unitary() {
        let rho = werner(0.5).unwrap();
        let bad = ComplexMatrix::identity(4).scale_real(2.0);
        assert!(matches!(rho.transform(&bad), Err(Error::NotUnitary { .. })));
        let mut r = crate::numerics::test_util::rng(5);
        let u = random_unitary(&mut r, 4);
        let t = rho.transform(&u).unwrap();
        assert!(DensityMatrix::validate(t.into_mat(), 2, 2).is_ok());
    }

    proptest! {
        #[test]
        fn pseudo_pure_spectrum(p in 0.0f64..=1.0, seed in any::<u64>()) {
            let psi = haar_random_pure(2, 2, RngSeed(seed)).unwrap();
            let spec = spectrum(&pseudo_pure(p, &psi).unwrap());
            prop_assert!((spec[0] - (1.0 + 3.0 * p) / 4.0).abs() < 1e-10);
            for x in &spec[1..] {
                prop_assert!((x - (1.0 - p) / 4.0).abs() < 1e-10);
            }
        }
    }
}
