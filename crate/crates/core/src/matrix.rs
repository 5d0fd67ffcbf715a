//! Fixed-size complex matrices for one and two qubits.
//!
//! Two-qubit operators use the computational basis ordering
//! `|00⟩, |01⟩, |10⟩, |11⟩`, the first tensor factor being the most
//! significant bit of the index.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[C64; 2]; 2]);

/// A 4×4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[C64; 4]; 4]);

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        impl $name {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = C64::new(rows[i][j], 0.0);
                    }
                }
                m
            }

            pub fn diagonal(values: [f64; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = C64::new(values[i], 0.0);
                }
                m
            }

            /// Conjugate transpose.
            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i].conj();
                    }
                }
                m
            }

            pub fn scale(&self, factor: C64) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z *= factor;
                    }
                }
                m
            }

            pub fn scale_real(&self, factor: f64) -> Self {
                self.scale(C64::new(factor, 0.0))
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            /// Largest entrywise modulus of `self - other`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                let mut worst = 0.0_f64;
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
                    }
                }
                worst
            }

            /// Largest `|m[i][j] - conj(m[j][i])|`.
            pub fn hermiticity_defect(&self) -> f64 {
                self.max_abs_diff(&self.adjoint())
            }

            pub fn is_finite(&self) -> bool {
                self.0
                    .iter()
                    .flatten()
                    .all(|z| z.re.is_finite() && z.im.is_finite())
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = C64;
            fn index(&self, (i, j): (usize, usize)) -> &C64 {
                &self.0[i][j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
                &mut self.0[i][j]
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] += rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] -= rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                &self * &rhs
            }
        }

        impl Mul for &$name {
            type Output = $name;
            fn mul(self, rhs: Self) -> $name {
                let mut m = $name::zeros();
                for i in 0..$n {
                    for k in 0..$n {
                        let a = self.0[i][k];
                        if a == ZERO {
                            continue;
                        }
                        for j in 0..$n {
                            m.0[i][j] += a * rhs.0[k][j];
                        }
                    }
                }
                m
            }
        }
    };
}

square_matrix!(Matrix2, 2);
square_matrix!(Matrix4, 4);

/// Pauli matrices and the identity.
pub mod pauli {
    use super::{Matrix2, C64, ONE, ZERO};

    pub fn identity() -> Matrix2 {
        Matrix2::identity()
    }

    /// σ₁
    pub fn x() -> Matrix2 {
        Matrix2([[ZERO, ONE], [ONE, ZERO]])
    }

    /// σ₂
    pub fn y() -> Matrix2 {
        let i = C64::new(0.0, 1.0);
        Matrix2([[ZERO, -i], [i, ZERO]])
    }

    /// σ₃
    pub fn z() -> Matrix2 {
        Matrix2([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `[σ₁, σ₂, σ₃]`
    pub fn all() -> [Matrix2; 3] {
        [x(), y(), z()]
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}
