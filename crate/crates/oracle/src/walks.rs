use nalgebra::DMatrix;
use num_complex::Complex64;

/// Hermitian generator with `e^{iφ}` at `(u, v)` and `e^{-iφ}` at `(v, u)`.
pub fn hamiltonian(n: usize, edges: &[(usize, usize)], phases: &[f64]) -> DMatrix<Complex64> {
    let mut h = DMatrix::zeros(n, n);
    for (&(u, v), &phi) in edges.iter().zip(phases) {
        h[(u, v)] = Complex64::from_polar(1.0, phi);
        h[(v, u)] = Complex64::from_polar(1.0, -phi);
    }
    h
}

fn norm1(a: &DMatrix<Complex64>) -> f64 {
    (0..a.ncols()).map(|c| a.column(c).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `e^{A}` by scaling and squaring a truncated Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm = norm1(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
        if norm1(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `e^{-iHt}`.
pub fn unitary(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    expm(&(h * Complex64::new(0.0, -t)))
}

/// `|U_jk|²`.
pub fn transition(u: &DMatrix<Complex64>) -> DMatrix<f64> {
    u.map(|z| z.norm_sqr())
}

/// `e^{-tL}` for the combinatorial Laplacian.
pub fn classical(n: usize, edges: &[(usize, usize)], t: f64) -> DMatrix<f64> {
    let mut l = DMatrix::<Complex64>::zeros(n, n);
    for &(u, v) in edges {
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    expm(&(l * Complex64::new(-t, 0.0))).map(|z| z.re)
}
