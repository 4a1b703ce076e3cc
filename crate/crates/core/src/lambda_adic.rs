//! Finite quotients `O/λ^k` of `Z[ζ]` and the fifth-power residues inside them.
//!
//! The ideal `λ^k O` is a sublattice of index `5^k` in the coordinate lattice
//! `Z⁴`. Its Hermite normal form gives a canonical residue for every element and
//! an explicit complete residue system, which is enumerated to decide whether a
//! congruence `x⁵ ≡ θ (mod λ^k)` is solvable.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclo5::CycInt;

/// Canonical residue coordinates modulo `λ^k`.
pub type Residue = [i64; 4];

/// `O/λ^k`, presented by the upper-triangular HNF basis of `λ^k O`.
#[derive(Debug, Clone)]
pub struct LambdaQuotient {
    k: u32,
    /// Row `j` has zeros left of column `j` and a positive pivot at `j`.
    hnf: [[i64; 4]; 4],
}

impl LambdaQuotient {
    pub fn new(k: u32) -> Self {
        let lk = CycInt::lambda().pow(k as u64);
        let mut rows: Vec<[i64; 4]> = (0..4)
            .map(|i| {
                let g = &lk * &CycInt::zeta_pow(i);
                g.coords()
                    .clone()
                    .map(|c| c.to_i64().expect("λ^k fits in i64"))
            })
            .collect();
        let hnf = hermite_normal_form(&mut rows);
        LambdaQuotient { k, hnf }
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    /// Number of residue classes, `5^k`.
    pub fn size(&self) -> u64 {
        self.hnf
            .iter()
            .enumerate()
            .map(|(j, r)| r[j] as u64)
            .product()
    }

    pub fn reduce(&self, x: &CycInt) -> Residue {
        let mut v: [BigInt; 4] = x.coords().clone();
        for j in 0..4 {
            let d = BigInt::from(self.hnf[j][j]);
            let q = v[j].div_floor(&d);
            for (col, vc) in v.iter_mut().enumerate().skip(j) {
                *vc -= &q * self.hnf[j][col];
            }
        }
        v.map(|c| c.to_i64().unwrap())
    }

    /// Every canonical residue, as a box `0 ≤ x_j < pivot_j`.
    pub fn residues(&self) -> impl Iterator<Item = Residue> + '_ {
        let d = [
            self.hnf[0][0],
            self.hnf[1][1],
            self.hnf[2][2],
            self.hnf[3][3],
        ];
        (0..self.size() as i64).map(move |mut idx| {
            let mut r = [0i64; 4];
            for j in 0..4 {
                r[j] = idx % d[j];
                idx /= d[j];
            }
            r
        })
    }

    /// The set of fifth powers in `O/λ^k`, by exhaustive enumeration.
    pub fn fifth_powers(&self) -> HashSet<Residue> {
        self.residues()
            .map(|r| {
                let x = CycInt::new(r[0], r[1], r[2], r[3]);
                self.reduce(&x.pow(5))
            })
            .collect()
    }
}

fn hermite_normal_form(rows: &mut [[i64; 4]]) -> [[i64; 4]; 4] {
    let n = rows.len();
    let mut top = 0;
    for col in 0..4 {
        // Euclid on column `col` among rows top.. until one nonzero entry remains
        loop {
            let nonzero: Vec<usize> = (top..n).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nonzero {
                if i != pivot {
                    let q = rows[i][col].div_euclid(rows[pivot][col]);
                    for c in 0..4 {
                        rows[i][c] -= q * rows[pivot][c];
                    }
                }
            }
        }
        let pivot = (top..n)
            .find(|&i| rows[i][col] != 0)
            .expect("full rank lattice");
        rows.swap(top, pivot);
        if rows[top][col] < 0 {
            for c in 0..4 {
                rows[top][c] = -rows[top][c];
            }
        }
        // reduce the entries above the pivot
        for i in 0..top {
            let q = rows[i][col].div_euclid(rows[top][col]);
            for c in 0..4 {
                rows[i][c] -= q * rows[top][c];
            }
        }
        top += 1;
    }
    [rows[0], rows[1], rows[2], rows[3]]
}

struct Tables {
    quotient: LambdaQuotient,
    fifth_powers: HashSet<Residue>,
}

fn tables(k: u32) -> &'static Tables {
    static T5: OnceLock<Tables> = OnceLock::new();
    static T6: OnceLock<Tables> = OnceLock::new();
    let cell = match k {
        5 => &T5,
        6 => &T6,
        _ => panic!("fifth-power tables are kept for λ^5 and λ^6 only"),
    };
    cell.get_or_init(|| {
        let quotient = LambdaQuotient::new(k);
        let fifth_powers = quotient.fifth_powers();
        Tables {
            quotient,
            fifth_powers,
        }
    })
}

/// Whether `x⁵ ≡ theta (mod λ^k)` has a solution, for `k ∈ {5, 6}`.
/// The residue tables are built once per process.
pub fn is_fifth_power_mod_lambda(theta: &CycInt, k: u32) -> bool {
    let t = tables(k);
    t.fifth_powers.contains(&t.quotient.reduce(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_sizes_are_powers_of_five() {
        for k in 1..=6 {
            assert_eq!(LambdaQuotient::new(k).size(), 5u64.pow(k));
        }
    }

    #[test]
    fn reduction_is_canonical() {
        let q = LambdaQuotient::new(6);
        let l6 = CycInt::lambda().pow(6);
        let x = CycInt::new(17, -3, 8, 2);
        let y = &x + &(&l6 * &CycInt::new(4, 1, -9, 3));
        assert_eq!(q.reduce(&x), q.reduce(&y));
        assert_eq!(q.reduce(&l6), [0; 4]);
        // distinct box points are distinct classes
        let seen: HashSet<Residue> = q
            .residues()
            .map(|r| q.reduce(&CycInt::new(r[0], r[1], r[2], r[3])))
            .collect();
        assert_eq!(seen.len() as u64, q.size());
    }

    #[test]
    fn rational_fifth_powers_mod_25() {
        // 2⁵ ≡ 7, 3⁵ ≡ 18, 4⁵ ≡ 24 (mod 25), and 25 = λ⁸·unit
        for n in [1i64, 7, 18, 24, 32, 149] {
            assert!(is_fifth_power_mod_lambda(&CycInt::from_int(n), 6), "{n}");
        }
        assert!(!is_fifth_power_mod_lambda(&CycInt::from_int(2), 5));
        assert!(!is_fifth_power_mod_lambda(&CycInt::from_int(19), 5));
    }
}
