//! Finite truncations of the mapping cone as explicit chain complexes.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use serde::Serialize;

use super::linalg::{rank, PrimeField};
use crate::error::{Error, Result};
use crate::gradedalg::Grading;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Row {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Part {
    Tower,
    Red(usize),
}

/// Basis element `U^{-level}` of one summand in one slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisLabel {
    pub slot: i64,
    pub row: Row,
    pub part: Part,
    pub level: u32,
    pub grading: Grading,
}

/// A cyclic summand of `A^red` in one slot together with its attaching
/// maps. The top generator goes to `v_coeff·U^{-m}` in `(n, B)` and to
/// `h_coeff·U^{-m'}` in `(n+1, B)`, with `m`, `m'` forced by the grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedPiece {
    pub offset: i64,
    pub length: u32,
    pub v_coeff: u32,
    pub h_coeff: u32,
}

/// One `A` slot: exponents of `v` and `h` on the tower plus reduced pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ASlot {
    pub v: u32,
    pub h: u32,
    pub red: Vec<RedPiece>,
}

#[derive(Clone, Debug)]
pub struct ConeInput {
    pub a_slots: BTreeMap<i64, ASlot>,
    pub b_slots: RangeInclusive<i64>,
    /// Grading of `1` in one `B` slot.
    pub anchor: (i64, Grading),
    /// Basis elements above this grading are discarded.
    pub ceiling: Grading,
    pub characteristic: u32,
}

/// `A` and `B` slots with gradings `≤ ceiling`, and the differential as
/// sparse columns over `F_p`.
#[derive(Clone, Debug)]
pub struct TruncatedCone {
    pub basis: Vec<BasisLabel>,
    pub differential: Vec<Vec<(usize, u32)>>,
    pub ceiling: Grading,
    field: PrimeField,
}

/// Level reached by the top of a length-`len` ladder at `top_grading`
/// inside a tower with bottom `bottom`, if a degree `-1` equivariant map
/// can reach it.
fn attach_level(top_grading: Grading, bottom: Grading, len: u32) -> Option<u32> {
    let m = (top_grading - Grading::int(1) - bottom).int_offset(Grading::zero())?;
    (m % 2 == 0 && m >= 0 && m / 2 < len as i64).then_some((m / 2) as u32)
}

pub fn build_cone(input: &ConeInput) -> Result<TruncatedCone> {
    let field = PrimeField::new(input.characteristic)?;
    let (&a_lo, _) = input.a_slots.first_key_value().ok_or_else(|| Error::Domain("no A slots".into()))?;
    let (&a_hi, _) = input.a_slots.last_key_value().unwrap();
    if input.a_slots.len() as i64 != a_hi - a_lo + 1 {
        return Err(Error::Domain("A slots must be contiguous".into()));
    }
    let lo = a_lo.min(*input.b_slots.start());
    let hi = (a_hi + 1).max(*input.b_slots.end());
    let (anchor, base) = input.anchor;
    if anchor < lo || anchor > hi {
        return Err(Error::Domain(format!("anchor slot {anchor} outside the cone")));
    }
    // b(n+1) = b(n) + 2(h_n - v_n)
    let step = |n: i64| -> Result<i64> {
        let s = input
            .a_slots
            .get(&n)
            .ok_or_else(|| Error::Domain(format!("B gradings need A slot {n}")))?;
        Ok(2 * (s.h as i64 - s.v as i64))
    };
    let mut b_grading: BTreeMap<i64, Grading> = BTreeMap::new();
    b_grading.insert(anchor, base);
    let mut g = base;
    for n in anchor..hi {
        if n < a_lo || n > a_hi {
            break;
        }
        g = g + Grading::int(step(n)?);
        b_grading.insert(n + 1, g);
    }
    let mut g = base;
    for n in (lo..anchor).rev() {
        if n < a_lo || n > a_hi {
            break;
        }
        g = g - Grading::int(step(n)?);
        b_grading.insert(n, g);
    }
    let b_of = |n: i64| -> Result<Grading> {
        b_grading.get(&n).copied().ok_or_else(|| Error::Domain(format!("no grading for B slot {n}")))
    };
    let ceiling = input.ceiling;

    let mut basis = Vec::new();
    let mut index: HashMap<(i64, Row, Part, u32), usize> = HashMap::new();
    let mut push = |label: BasisLabel, basis: &mut Vec<BasisLabel>| {
        index.insert((label.slot, label.row, label.part, label.level), basis.len());
        basis.push(label);
    };
    for n in input.b_slots.clone() {
        let b = b_of(n)?;
        let mut level = 0;
        while b.shift(level as i64) <= ceiling {
            push(BasisLabel { slot: n, row: Row::B, part: Part::Tower, level, grading: b.shift(level as i64) }, &mut basis);
            level += 1;
        }
    }
    for (&n, slot) in &input.a_slots {
        let a = b_of(n)? + Grading::int(1 - 2 * slot.v as i64);
        let mut level = 0;
        while a.shift(level as i64) <= ceiling {
            push(BasisLabel { slot: n, row: Row::A, part: Part::Tower, level, grading: a.shift(level as i64) }, &mut basis);
            level += 1;
        }
        for (r, piece) in slot.red.iter().enumerate() {
            let e = a + Grading::int(piece.offset);
            for level in 0..piece.length {
                if e.shift(level as i64) <= ceiling {
                    push(
                        BasisLabel { slot: n, row: Row::A, part: Part::Red(r), level, grading: e.shift(level as i64) },
                        &mut basis,
                    );
                }
            }
        }
    }

    let mut differential = vec![Vec::new(); basis.len()];
    let in_b = |n: i64| input.b_slots.contains(&n);
    for (col, label) in basis.iter().enumerate() {
        if label.row == Row::B {
            continue;
        }
        let slot = &input.a_slots[&label.slot];
        let mut out: Vec<(usize, u32)> = Vec::new();
        let mut emit = |target: i64, level: i64, coeff: u32| {
            if coeff.is_multiple_of(field.characteristic()) || level < 0 || !in_b(target) {
                return;
            }
            let idx = index[&(target, Row::B, Part::Tower, level as u32)];
            out.push((idx, coeff % field.characteristic()));
        };
        match label.part {
            Part::Tower => {
                let m = label.level as i64;
                emit(label.slot, m - slot.v as i64, 1);
                emit(label.slot + 1, m - slot.h as i64, 1);
            }
            Part::Red(r) => {
                let piece = slot.red[r];
                let top = label.grading.shift(piece.length as i64 - 1 - label.level as i64);
                let down = (piece.length - 1 - label.level) as i64;
                for (target, coeff) in [(label.slot, piece.v_coeff), (label.slot + 1, piece.h_coeff)] {
                    if coeff.is_multiple_of(field.characteristic()) || !in_b(target) {
                        continue;
                    }
                    let Some(m) = attach_level(top, b_of(target)?, piece.length) else {
                        return Err(Error::Domain(format!(
                            "reduced piece {r} in slot {} has no equivariant map to B slot {target}",
                            label.slot
                        )));
                    };
                    emit(target, m as i64 - down, coeff);
                }
            }
        }
        differential[col] = out;
    }
    Ok(TruncatedCone { basis, differential, ceiling, field })
}

/// Whether a reduced piece can carry a nonzero map to the given `B` slot.
pub fn can_attach(a_bottom: Grading, piece_offset: i64, length: u32, b_bottom: Grading) -> bool {
    let top = a_bottom + Grading::int(piece_offset).shift(length as i64 - 1);
    attach_level(top, b_bottom, length).is_some()
}

impl TruncatedCone {
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    /// `d∘d`, as a list of nonzero entries (empty for a chain complex).
    pub fn d_squared(&self) -> Vec<(usize, usize, u32)> {
        let mut bad = Vec::new();
        for (col, image) in self.differential.iter().enumerate() {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            for &(mid, c1) in image {
                for &(row, c2) in &self.differential[mid] {
                    let e = acc.entry(row).or_insert(0);
                    *e = self.field.add(*e, self.field.mul(c1, c2));
                }
            }
            bad.extend(acc.into_iter().filter(|(_, c)| *c != 0).map(|(r, c)| (r, col, c)));
        }
        bad
    }

    /// Every nonzero entry lowers grading by exactly one.
    pub fn is_graded(&self) -> bool {
        self.differential.iter().enumerate().all(|(col, image)| {
            image.iter().all(|&(row, _)| self.basis[row].grading + Grading::int(1) == self.basis[col].grading)
        })
    }

    /// Basis count per grading.
    pub fn chain_dims(&self) -> BTreeMap<Grading, u64> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.grading).or_insert(0) += 1;
        }
        out
    }

    /// `dim H_j` for every grading `j ≤ ceiling - 1`; these agree with the
    /// untruncated complex since `{gr ≤ ceiling}` is a subcomplex.
    pub fn homology(&self) -> BTreeMap<Grading, u64> {
        let mut by_grading: BTreeMap<Grading, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            by_grading.entry(b.grading).or_default().push(i);
        }
        let position: HashMap<usize, usize> = by_grading
            .values()
            .flat_map(|ids| ids.iter().enumerate().map(|(pos, &id)| (id, pos)))
            .collect();
        // rank of d: C_j -> C_{j-1}
        let mut ranks: BTreeMap<Grading, usize> = BTreeMap::new();
        for (&g, cols) in &by_grading {
            let Some(rows) = by_grading.get(&(g - Grading::int(1))) else { continue };
            let mut m = vec![vec![0u32; cols.len()]; rows.len()];
            for (c, &id) in cols.iter().enumerate() {
                for &(row, coeff) in &self.differential[id] {
                    m[position[&row]][c] = coeff;
                }
            }
            ranks.insert(g, rank(&self.field, &mut m));
        }
        let top = self.ceiling - Grading::int(1);
        by_grading
            .iter()
            .filter(|(g, _)| **g <= top)
            .map(|(&g, ids)| {
                let r_out = ranks.get(&g).copied().unwrap_or(0);
                let r_in = ranks.get(&(g + Grading::int(1))).copied().unwrap_or(0);
                (g, (ids.len() - r_out - r_in) as u64)
            })
            .filter(|(_, d)| *d > 0)
            .collect()
    }
}
