use std::ops::{Index, IndexMut};

use super::SpectralError;
use crate::graph::WeightedDigraph;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Panics if the rows are not all of length `rows.len()`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// Sum of absolute values of all entries.
    pub fn abs_sum(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).sum()
    }

    pub fn shifted(&self, x: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] -= x;
        }
        m
    }

    /// Principal submatrix keeping the given (sorted, distinct) indices.
    pub fn principal(&self, keep: &[usize]) -> Self {
        let mut m = Self::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap();
            let pivot = a[p * n + k];
            if pivot == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = -det;
            }
            det *= pivot;
            for i in k + 1..n {
                let factor = a[i * n + k] / pivot;
                if factor != 0.0 {
                    for j in k + 1..n {
                        a[i * n + j] -= factor * a[k * n + j];
                    }
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// In-degree Laplacian: `L[i][i]` is the total weight entering node `i`
/// and `L[i][j] = -w(j -> i)`. Rows sum to zero.
pub fn laplacian(g: &WeightedDigraph) -> SquareMatrix {
    let mut l = SquareMatrix::zeros(g.len());
    for (src, dst, w) in g.edges() {
        l[(dst, dst)] += w;
        l[(dst, src)] -= w;
    }
    l
}

/// The matrix with row and column `index` (0-based) deleted.
pub fn grounded(m: &SquareMatrix, index: usize) -> Result<SquareMatrix, SpectralError> {
    let n = m.dim();
    if n < 2 {
        return Err(SpectralError::TooSmall { n, min: 2 });
    }
    if index >= n {
        return Err(SpectralError::IndexOutOfRange { index, n });
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != index).collect();
    Ok(m.principal(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::ConeGraph;

    fn bidirected_path(n: usize) -> WeightedDigraph {
        let mut g = WeightedDigraph::new((0..n).map(|i| format!("p{i}"))).unwrap();
        for i in 1..n {
            g.add_edge(i - 1, i, 1.0).unwrap();
            g.add_edge(i, i - 1, 1.0).unwrap();
        }
        g
    }

    #[test]
    fn path_laplacian() {
        let l = laplacian(&bidirected_path(2));
        assert_eq!(l.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn single_node_cone_laplacian_has_apex_first() {
        let cone = ConeGraph::new(&WeightedDigraph::new(["v"]).unwrap(), &[1.0]).unwrap();
        let l = laplacian(cone.digraph());
        assert_eq!(l.to_rows(), vec![vec![0.0, 0.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn gtri_laplacian_rows_sum_to_zero() {
        let (g, _) = fixtures::g_tri().to_digraph();
        let l = laplacian(&g);
        assert_eq!(l.dim(), 10);
        assert!(l.row_sums().iter().all(|s| s.abs() <= 1e-12));
    }

    #[test]
    fn grounding() {
        let m = SquareMatrix::from_rows(&[[0.0, 0.0], [-1.0, 1.0]]);
        assert_eq!(grounded(&m, 0).unwrap().to_rows(), vec![vec![1.0]]);
        let l = laplacian(&bidirected_path(3));
        assert_eq!(
            grounded(&l, 0).unwrap().to_rows(),
            vec![vec![2.0, -1.0], vec![-1.0, 1.0]]
        );
        assert_eq!(
            grounded(&m, 2),
            Err(SpectralError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert!(matches!(
            grounded(&SquareMatrix::zeros(1), 0),
            Err(SpectralError::TooSmall { .. })
        ));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = SquareMatrix::from_rows(&[[0.0, 2.0], [3.0, 1.0]]);
        assert!((m.determinant() + 6.0).abs() < 1e-14);
        let m = SquareMatrix::from_rows(&[[2.0, -1.0], [-1.0, 2.0]]);
        assert!((m.determinant() - 3.0).abs() < 1e-14);
        assert_eq!(SquareMatrix::zeros(3).determinant(), 0.0);
        assert_eq!(SquareMatrix::zeros(0).determinant(), 1.0);
    }
}
