//! Dense exact linear algebra over `F_p`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).all(|d| !p.is_multiple_of(d));
        if !is_prime {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }
}

/// Rank of a dense row-major matrix, destroying it.
pub fn rank(field: &PrimeField, m: &mut [Vec<u32>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = field.inv(m[r][c]);
        for x in m[r][c..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7919).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let m = vec![vec![1, 1], vec![1, 3]];
        assert_eq!(rank(&PrimeField::new(2).unwrap(), &mut m.clone()), 1);
        assert_eq!(rank(&PrimeField::new(3).unwrap(), &mut m.clone()), 2);
    }

    #[test]
    fn rank_of_empty_and_zero() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(rank(&f, &mut []), 0);
        assert_eq!(rank(&f, &mut [vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&f, &mut [vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]), 2);
    }
}
