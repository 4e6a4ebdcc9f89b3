use nalgebra::{DMatrix, SymmetricEigen};

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn degrees(a: &[Vec<bool>]) -> Vec<usize> {
    a.iter().map(|row| row.iter().filter(|&&x| x).count()).collect()
}

pub fn common_neighbours(a: &[Vec<bool>], j: usize, k: usize) -> f64 {
    (0..a.len()).filter(|&u| a[j][u] && a[k][u]).count() as f64
}

pub fn adamic_adar(a: &[Vec<bool>], j: usize, k: usize) -> f64 {
    let d = degrees(a);
    (0..a.len()).filter(|&u| a[j][u] && a[k][u] && d[u] > 1).map(|u| 1.0 / (d[u] as f64).ln()).sum()
}

pub fn preferential_attachment(a: &[Vec<bool>], j: usize, k: usize) -> f64 {
    let d = degrees(a);
    (d[j] * d[k]) as f64
}

pub fn l3(a: &[Vec<bool>], j: usize, k: usize) -> f64 {
    let d = degrees(a);
    let n = a.len();
    let mut s = 0.0;
    for u in 0..n {
        for v in 0..n {
            if a[j][u] && a[u][v] && a[v][k] {
                s += 1.0 / ((d[u] * d[v]) as f64).sqrt();
            }
        }
    }
    s
}

/// `Σ_k (λ_k + x_kᵀ ΔA x_k) x_k x_kᵀ` with the eigenpairs of `A − ΔA`.
pub fn spm(n: usize, edges: &[(usize, usize)], perturbation: &[(usize, usize)]) -> DMatrix<f64> {
    let mut residual = DMatrix::<f64>::zeros(n, n);
    let mut delta = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in edges {
        residual[(u, v)] = 1.0;
        residual[(v, u)] = 1.0;
    }
    for &(u, v) in perturbation {
        residual[(u, v)] = 0.0;
        residual[(v, u)] = 0.0;
        delta[(u, v)] = 1.0;
        delta[(v, u)] = 1.0;
    }
    let eig = SymmetricEigen::new(residual);
    let mut out = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let x = eig.eigenvectors.column(k);
        let shift = (x.transpose() * &delta * x)[(0, 0)];
        out += (x * x.transpose()) * (eig.eigenvalues[k] + shift);
    }
    out
}
