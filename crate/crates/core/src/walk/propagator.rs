use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64;

use super::ChiralGenerator;
use crate::error::Result;
use crate::linalg;

#[derive(Debug, Clone)]
enum Eigenvectors {
    /// Non-chiral generators are real symmetric.
    Real(Array2<f64>),
    Complex(Array2<Complex64>),
}

/// Spectral factorization `H = X Λ X†` of a walk generator, from which
/// `U(t) = X e^{-iΛt} X†` is formed at any time.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigenvalues: Array1<f64>,
    vectors: Eigenvectors,
}

/// Factorizes the generator once. Zero-phase generators take the real
/// symmetric path.
pub fn diagonalize(generator: &ChiralGenerator<'_>) -> Result<Propagator> {
    if generator.is_chiral() {
        let (eigenvalues, x) = linalg::hermitian_eigh(&generator.matrix())?;
        Ok(Propagator { eigenvalues, vectors: Eigenvectors::Complex(x) })
    } else {
        let (eigenvalues, x) = linalg::symmetric_eigh(&generator.graph().adjacency_matrix())?;
        Ok(Propagator { eigenvalues, vectors: Eigenvectors::Real(x) })
    }
}

impl Propagator {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> &Array1<f64> {
        &self.eigenvalues
    }

    pub fn is_real(&self) -> bool {
        matches!(self.vectors, Eigenvectors::Real(_))
    }

    /// Eigenvectors as columns.
    pub fn eigenvectors(&self) -> Array2<Complex64> {
        match &self.vectors {
            Eigenvectors::Real(x) => x.mapv(|v| Complex64::new(v, 0.0)),
            Eigenvectors::Complex(x) => x.clone(),
        }
    }

    /// `X Λ X†`; should reproduce the generator matrix.
    pub fn reconstruct(&self) -> Array2<Complex64> {
        let x = self.eigenvectors();
        let xl = &x * &self.eigenvalues.mapv(|l| Complex64::new(l, 0.0));
        xl.dot(&adjoint(&x))
    }

    /// `U(t) = e^{-iHt}`; exactly the identity at `t = 0`.
    pub fn unitary(&self, t: f64) -> Array2<Complex64> {
        if t == 0.0 {
            return Array2::eye(self.dim());
        }
        match &self.vectors {
            Eigenvectors::Real(x) => {
                let (c, s) = self.real_parts(x, t);
                let mut u = Array2::zeros(c.dim());
                Zip::from(&mut u).and(&c).and(&s).for_each(|u, &c, &s| *u = Complex64::new(c, -s));
                u
            }
            Eigenvectors::Complex(x) => {
                let e = self.eigenvalues.mapv(|l| Complex64::from_polar(1.0, -l * t));
                (x * &e).dot(&adjoint(x))
            }
        }
    }

    /// `P_jk(t) = |⟨j|U(t)|k⟩|²`.
    pub fn transition_matrix(&self, t: f64) -> Array2<f64> {
        if t == 0.0 {
            return Array2::eye(self.dim());
        }
        match &self.vectors {
            Eigenvectors::Real(x) => {
                let (mut c, s) = self.real_parts(x, t);
                Zip::from(&mut c).and(&s).for_each(|c, &s| *c = *c * *c + s * s);
                c
            }
            Eigenvectors::Complex(_) => self.unitary(t).mapv(|z| z.norm_sqr()),
        }
    }

    /// Real and (negated) imaginary parts of `U(t)` for a real eigenbasis:
    /// `X cos(Λt) Xᵀ` and `X sin(Λt) Xᵀ`.
    fn real_parts(&self, x: &Array2<f64>, t: f64) -> (Array2<f64>, Array2<f64>) {
        let cos = self.eigenvalues.mapv(|l| (l * t).cos());
        let sin = self.eigenvalues.mapv(|l| (l * t).sin());
        let xt = x.t();
        ((x * &cos).dot(&xt), (x * &sin).dot(&xt))
    }
}

pub(crate) fn adjoint(x: &Array2<Complex64>) -> Array2<Complex64> {
    x.t().mapv(|z| z.conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::walk::build_generator;

    #[test]
    fn path2_spectrum() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = diagonalize(&build_generator(&g, None).unwrap()).unwrap();
        assert!(p.is_real());
        assert!((p.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((p.eigenvalues()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn path3_spectrum() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = diagonalize(&build_generator(&g, None).unwrap()).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in p.eigenvalues().iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_at_time_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let gen = build_generator(&g, Some(&[0.4, 1.1, -0.2, 2.0])).unwrap();
        let p = diagonalize(&gen).unwrap();
        let m = p.transition_matrix(0.0);
        for j in 0..4 {
            for k in 0..4 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((m[[j, k]] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn real_and_complex_paths_agree_on_zero_phase() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let gen = build_generator(&g, None).unwrap();
        let real = diagonalize(&gen).unwrap();
        let (w, x) = linalg::hermitian_eigh(&gen.matrix()).unwrap();
        let complex = Propagator { eigenvalues: w, vectors: Eigenvectors::Complex(x) };
        let a = real.unitary(1.3);
        let b = complex.unitary(1.3);
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
