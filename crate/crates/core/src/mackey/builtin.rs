use std::sync::Arc;

use num_traits::One;

use super::{MackeyFunctor, NaturalData};
use crate::chartab::{induction_matrix, restriction_matrix, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{double_cosets, Subgroup, SubgroupClassTable};
use crate::linalg::{q, RationalMatrix, Q};

/// `M(H) = Q`, restrictions the identity, `ind^H_K = [H : K]`.
pub fn constant(table: Arc<SubgroupClassTable>) -> Result<MackeyFunctor> {
    MackeyFunctor::from_natural("constant", table, &Constant)
}

struct Constant;

impl NaturalData for Constant {
    fn dim(&self, _: &Subgroup) -> usize {
        1
    }

    fn res(&self, _: &Subgroup, _: &Subgroup) -> Result<RationalMatrix> {
        Ok(RationalMatrix::identity(1))
    }

    fn ind(&self, k: &Subgroup, h: &Subgroup) -> Result<RationalMatrix> {
        Ok(RationalMatrix::scalar(1, &q((h.order() / k.order()) as i64)))
    }

    fn conj(&self, _: usize, _: &Subgroup) -> Result<RationalMatrix> {
        Ok(RationalMatrix::identity(1))
    }
}

/// The rationalized Burnside ring `A(H) ⊗ Q` with basis the orbits `H/L`, one per
/// `H`-conjugacy class of subgroups `L ≤ H`.
pub fn burnside(table: Arc<SubgroupClassTable>) -> Result<MackeyFunctor> {
    let data = Burnside { table: Arc::clone(&table) };
    MackeyFunctor::from_natural("burnside", table, &data)
}

struct Burnside {
    table: Arc<SubgroupClassTable>,
}

impl Burnside {
    /// Least `H`-conjugate of `l`.
    fn canon(&self, h: &Subgroup, l: &Subgroup) -> Subgroup {
        let g = self.table.group();
        h.iter().map(|x| l.conjugate(g, x)).min().expect("subgroups are nonempty")
    }

    fn basis(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = self
            .table
            .subgroups()
            .iter()
            .filter(|l| l.is_subgroup_of(h))
            .map(|l| self.canon(h, l))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn position(&self, h: &Subgroup, l: &Subgroup) -> usize {
        let c = self.canon(h, l);
        self.basis(h).iter().position(|x| *x == c).expect("canonical orbit type")
    }
}

impl NaturalData for Burnside {
    fn dim(&self, h: &Subgroup) -> usize {
        self.basis(h).len()
    }

    fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<RationalMatrix> {
        let g = self.table.group();
        let src = self.basis(h);
        let mut m = RationalMatrix::zeros(self.dim(k), src.len());
        for (i, l) in src.iter().enumerate() {
            // H/L as a K-set splits over K\H/L into orbits K/(K ∩ xLx⁻¹)
            let dc = double_cosets(g, k, l);
            for &x in dc.representatives.iter().filter(|&&x| h.contains(x)) {
                let stab = k.intersection(&l.conjugate(g, x));
                *m.entry_mut(self.position(k, &stab), i) += Q::one();
            }
        }
        Ok(m)
    }

    fn ind(&self, k: &Subgroup, h: &Subgroup) -> Result<RationalMatrix> {
        let src = self.basis(k);
        let mut m = RationalMatrix::zeros(self.dim(h), src.len());
        for (i, l) in src.iter().enumerate() {
            m.set(self.position(h, l), i, Q::one());
        }
        Ok(m)
    }

    fn conj(&self, x: usize, h: &Subgroup) -> Result<RationalMatrix> {
        let g = self.table.group();
        let target = h.conjugate(g, x);
        let src = self.basis(h);
        let mut m = RationalMatrix::zeros(src.len(), src.len());
        for (i, l) in src.iter().enumerate() {
            m.set(self.position(&target, &l.conjugate(g, x)), i, Q::one());
        }
        Ok(m)
    }
}

/// The rationalized complex representation ring `R(H) ⊗ Q` in the basis of irreducible
/// characters. Non-abelian subgroups take their tables from `library`.
pub fn repring(table: Arc<SubgroupClassTable>, library: &[CharacterTable]) -> Result<MackeyFunctor> {
    let mut chars = Vec::with_capacity(table.num_classes());
    let mut elems = Vec::with_capacity(table.num_classes());
    for c in 0..table.num_classes() {
        let r = table.rep(c);
        let abstract_group = Arc::new(r.as_group(table.group(), format!("{r}")));
        chars.push(CharacterTable::for_group(abstract_group, library)?);
        elems.push(r.elements());
    }
    let data = RepRing {
        table: Arc::clone(&table),
        chars,
        elems,
    };
    MackeyFunctor::from_natural("repring", table, &data)
}

struct RepRing {
    table: Arc<SubgroupClassTable>,
    chars: Vec<CharacterTable>,
    elems: Vec<Vec<usize>>,
}

impl RepRing {
    fn index(&self, c: usize, x: usize) -> usize {
        self.elems[c].binary_search(&x).expect("element of the representative")
    }

    /// Embedding of the abstract group of `k`'s representative into that of `h`'s.
    fn embedding(&self, h: &Subgroup, k: &Subgroup) -> Result<(usize, usize, Vec<usize>)> {
        let g = self.table.group();
        let (ch, th) = self.table.locate(h)?;
        let (ck, tk) = self.table.locate(k)?;
        let back = g.inv(th);
        let emb = self.elems[ck]
            .iter()
            .map(|&x| self.index(ch, g.conj(back, g.conj(tk, x))))
            .collect();
        Ok((ch, ck, emb))
    }
}

impl NaturalData for RepRing {
    fn dim(&self, h: &Subgroup) -> usize {
        self.table.class_of(h).map_or(0, |c| self.chars[c].len())
    }

    fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<RationalMatrix> {
        let (ch, ck, emb) = self.embedding(h, k)?;
        restriction_matrix(&self.chars[ch], &self.chars[ck], &emb)
    }

    fn ind(&self, k: &Subgroup, h: &Subgroup) -> Result<RationalMatrix> {
        let (ch, ck, emb) = self.embedding(h, k)?;
        induction_matrix(&self.chars[ch], &self.chars[ck], &emb)
    }

    fn conj(&self, x: usize, h: &Subgroup) -> Result<RationalMatrix> {
        let g = self.table.group();
        let (c, t) = self.table.locate(h)?;
        let (_, s) = self.table.locate(&h.conjugate(g, x))?;
        let n = g.mul(g.mul(g.inv(s), x), t);
        let tab = &self.chars[c];
        let reps: Vec<usize> = tab.classes().iter().map(|(r, _)| *r).collect();
        let moved: Vec<usize> = reps
            .iter()
            .map(|&r| self.index(c, g.conj(g.inv(n), self.elems[c][r])))
            .collect();
        let mut m = RationalMatrix::zeros(tab.len(), tab.len());
        for i in 0..tab.len() {
            let j = (0..tab.len())
                .find(|&j| reps.iter().zip(&moved).all(|(&r, &y)| tab.value(j, r) == tab.value(i, y)))
                .ok_or_else(|| {
                    Error::CharacterTable(format!("conjugation by {n} does not permute the characters of {h}"))
                })?;
            m.set(j, i, Q::one());
        }
        Ok(m)
    }
}
