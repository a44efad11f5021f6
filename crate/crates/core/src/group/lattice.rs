use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{FiniteGroup, MAX_ORDER};
use crate::error::{Error, Result};
use crate::text::fmt_set;

/// A subgroup, stored as a bitmask of element indices.
///
/// Ordered by size first, then lexicographically by sorted element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: u64,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { mask: 1 }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_mask_unchecked(full_mask(g.order()))
    }

    pub(crate) fn from_mask_unchecked(mask: u64) -> Self {
        Subgroup { mask }
    }

    /// Checks closure and builds the subgroup with exactly these elements.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        if g.order() > MAX_ORDER {
            return Err(Error::CapExceeded {
                order: g.order(),
                cap: MAX_ORDER,
            });
        }
        let mut mask = 0u64;
        for &e in elems {
            if e >= g.order() {
                return Err(Error::NotSubgroup(format!("element {e} is not in {}", g.name())));
            }
            mask |= 1 << e;
        }
        let s = Subgroup { mask };
        if !s.contains(0) {
            return Err(Error::NotSubgroup(format!("{} misses the identity", fmt_set(&s.elements()))));
        }
        for a in s.iter() {
            if !s.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!(
                    "{} misses the inverse of {a}",
                    fmt_set(&s.elements())
                )));
            }
            for b in s.iter() {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{} is not closed: {a}*{b} = {}",
                        fmt_set(&s.elements()),
                        g.mul(a, b)
                    )));
                }
            }
        }
        if g.order() % s.order() != 0 {
            return Err(Error::NotSubgroup("order does not divide the group order".into()));
        }
        Ok(s)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Self::from_iter_unchecked(g.closure(gens))
    }

    fn from_iter_unchecked(elems: impl IntoIterator<Item = usize>) -> Self {
        Subgroup {
            mask: elems.into_iter().fold(0, |m, e| m | (1 << e)),
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        g < 64 && self.mask >> g & 1 == 1
    }

    pub fn order(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.mask;
        (0..64).filter(move |&i| m >> i & 1 == 1)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            mask: self.mask & other.mask,
        }
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        Self::from_iter_unchecked(self.iter().map(|h| g.conj(x, h)))
    }

    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        Self::from_iter_unchecked((0..g.order()).filter(|&x| self.conjugate(g, x) == *self))
    }

    pub fn centralizer(&self, g: &FiniteGroup) -> Subgroup {
        Self::from_iter_unchecked(
            (0..g.order()).filter(|&x| self.iter().all(|h| g.mul(x, h) == g.mul(h, x))),
        )
    }

    /// Product set `H·K`, which is a subgroup when one factor normalizes the other.
    pub fn product(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut mask = 0u64;
        for a in self.iter() {
            for b in other.iter() {
                mask |= 1 << g.mul(a, b);
            }
        }
        Subgroup { mask }
    }

    pub fn as_group(&self, g: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        g.subgroup_as_group(name, &self.elements())
            .expect("subgroup elements are closed")
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_set(&self.elements()))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_set(&self.elements()))
    }
}

/// `W_G H = N_G H / (H · C_G H)` with its quotient map.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    group: Arc<FiniteGroup>,
    kernel: Subgroup,
    cosets: Vec<Vec<usize>>,
    quotient: Vec<Option<usize>>,
}

impl WeylGroup {
    fn new(g: &FiniteGroup, h: &Subgroup, normalizer: &Subgroup, centralizer: &Subgroup) -> Self {
        let kernel = h.product(g, centralizer);
        let mut quotient = vec![None; g.order()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for n in normalizer.iter() {
            if quotient[n].is_some() {
                continue;
            }
            let mut coset: Vec<usize> = kernel.iter().map(|k| g.mul(n, k)).collect();
            coset.sort_unstable();
            for &x in &coset {
                quotient[x] = Some(cosets.len());
            }
            cosets.push(coset);
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let table = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| quotient[g.mul(a, b)].expect("normalizer is closed"))
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(format!("W{}", h), table).expect("quotient of a group");
        WeylGroup {
            group: Arc::new(group),
            kernel,
            cosets,
            quotient,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    /// `H · C_G H`.
    pub fn kernel(&self) -> Subgroup {
        self.kernel
    }

    /// Image of a normalizer element; `None` outside the normalizer.
    pub fn project(&self, n: usize) -> Option<usize> {
        self.quotient[n]
    }

    /// Minimal element of the coset `w`.
    pub fn lift(&self, w: usize) -> usize {
        self.cosets[w][0]
    }

    pub fn coset(&self, w: usize) -> &[usize] {
        &self.cosets[w]
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub members: Vec<Subgroup>,
    /// `conjugators[i]` is the least `g` with `g · rep · g⁻¹ = members[i]`.
    pub conjugators: Vec<usize>,
    pub normalizer: Subgroup,
    pub centralizer: Subgroup,
    pub weyl: WeylGroup,
}

/// All subgroups of a group, grouped into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<u64, usize>,
    class_of: Vec<usize>,
    conjugator: Vec<usize>,
    classes: Vec<SubgroupClass>,
}

/// Enumerates every subgroup by breadth-first closure, sorted.
pub fn enumerate_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    let cap = cap.min(MAX_ORDER);
    if g.order() > cap {
        return Err(Error::CapExceeded { order: g.order(), cap });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let triv = Subgroup::trivial();
    seen.insert(triv.mask);
    queue.push_back(triv);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        out.push(h);
        let base = h.elements();
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let mut gens = base.clone();
            gens.push(x);
            let k = Subgroup::generated(g, &gens);
            if seen.insert(k.mask) {
                queue.push_back(k);
            }
        }
    }
    out.sort();
    Ok(out)
}

impl SubgroupClassTable {
    pub fn new(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        let g = &*group;
        let subgroups = enumerate_subgroups(g, cap)?;
        let index: HashMap<u64, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.mask, i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut conjugator = vec![0; subgroups.len()];
        let mut classes = Vec::new();
        for (i, &h) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            let mut conjugators = Vec::new();
            for x in 0..g.order() {
                let k = h.conjugate(g, x);
                let j = index[&k.mask];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    conjugator[j] = x;
                    members.push(k);
                    conjugators.push(x);
                }
            }
            let mut order: Vec<usize> = (0..members.len()).collect();
            order.sort_by_key(|&m| members[m]);
            let members: Vec<Subgroup> = order.iter().map(|&m| members[m]).collect();
            let conjugators: Vec<usize> = order.iter().map(|&m| conjugators[m]).collect();
            let normalizer = h.normalizer(g);
            let centralizer = h.centralizer(g);
            let weyl = WeylGroup::new(g, &h, &normalizer, &centralizer);
            classes.push(SubgroupClass {
                rep: h,
                members,
                conjugators,
                normalizer,
                centralizer,
                weyl,
            });
        }
        Ok(SubgroupClassTable {
            group,
            subgroups,
            index,
            class_of,
            conjugator,
            classes,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.classes[c]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn rep(&self, c: usize) -> Subgroup {
        self.classes[c].rep
    }

    /// Index of `h` in the sorted subgroup list.
    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(&h.mask).copied()
    }

    /// Class of `h` and the least `g` with `g · rep · g⁻¹ = h`.
    pub fn locate(&self, h: &Subgroup) -> Result<(usize, usize)> {
        let i = self
            .index_of(h)
            .ok_or_else(|| Error::NotSubgroup(format!("{h} is not a subgroup of {}", self.group.name())))?;
        Ok((self.class_of[i], self.conjugator[i]))
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        self.locate(h).map(|(c, _)| c)
    }

    /// Class index whose representative is exactly `h`.
    pub fn class_with_rep(&self, h: &Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.rep == *h)
    }

    /// True when some conjugate of `h` lies in `k`.
    pub fn is_subconjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        let g = &*self.group;
        (0..g.order()).any(|x| h.conjugate(g, x).is_subgroup_of(k))
    }

    /// Double cosets `K g H`, each with its minimal element as representative.
    pub fn double_cosets(&self, k: &Subgroup, h: &Subgroup) -> DoubleCosetDecomposition {
        double_cosets(&self.group, k, h)
    }
}

/// Partition of `G` into double cosets `K g H`.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    pub left: Subgroup,
    pub right: Subgroup,
    pub representatives: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

pub fn double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> DoubleCosetDecomposition {
    let mut seen = vec![false; g.order()];
    let mut representatives = Vec::new();
    let mut cosets = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut cell = Vec::new();
        for a in k.iter() {
            let ax = g.mul(a, x);
            for b in h.iter() {
                let y = g.mul(ax, b);
                if !seen[y] {
                    seen[y] = true;
                    cell.push(y);
                }
            }
        }
        cell.sort_unstable();
        representatives.push(x);
        cosets.push(cell);
    }
    DoubleCosetDecomposition {
        left: *k,
        right: *h,
        representatives,
        cosets,
    }
}
