use super::{Field, Matrix};

/// Reduced row echelon form with its rank and a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<T> {
    pub rref: Matrix<T>,
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// Column vectors spanning the right kernel.
    pub kernel: Vec<Matrix<T>>,
}

impl<T: Field> Matrix<T> {
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols() {
            if row == a.rows() {
                break;
            }
            let Some(p) = (row..a.rows()).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a.get(row, col).inv().expect("nonzero pivot");
            a.scale_row(row, &inv);
            for r in 0..a.rows() {
                if r != row && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn rref_rank_kernel(&self) -> Echelon<T> {
        let (rref, pivots) = self.rref();
        let n = self.cols();
        let mut kernel = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(r, free).clone();
            }
            kernel.push(Matrix::column(v));
        }
        Echelon {
            rank: pivots.len(),
            rref,
            pivots,
            kernel,
        }
    }
}
