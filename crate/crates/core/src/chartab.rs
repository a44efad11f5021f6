//! Character tables and restriction/induction multiplicities.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{q, Cyclotomic, RationalMatrix, Q};
use crate::text::{indent_col, strip_comment};

/// Irreducible complex characters of a finite group, valued in `Q(ζ_N)` with `N` the exponent.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<(usize, Vec<usize>)>,
    class_of: Vec<usize>,
    names: Vec<String>,
    values: Vec<Vec<Cyclotomic>>,
    conductor: u32,
}

impl CharacterTable {
    /// Builds and validates a table; `values[i][c]` is `χ_i` on the class with index `c`
    /// in [`FiniteGroup::element_conjugacy_classes`] order.
    pub fn new(group: Arc<FiniteGroup>, names: Vec<String>, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let table = Self::new_unchecked(group, names, values)?;
        table.validate()?;
        Ok(table)
    }

    fn new_unchecked(group: Arc<FiniteGroup>, names: Vec<String>, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let classes = group.element_conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (c, (_, members)) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = c;
            }
        }
        let conductor = group.exponent() as u32;
        let values = values
            .into_iter()
            .map(|row| {
                if row.len() != classes.len() {
                    return Err(Error::CharacterTable(format!(
                        "character has {} values but {} has {} classes",
                        row.len(),
                        group.name(),
                        classes.len()
                    )));
                }
                row.iter()
                    .map(|v| {
                        v.lift(conductor).map_err(|_| {
                            Error::CharacterTable(format!(
                                "value {v} does not lie in Q(z({conductor}))"
                            ))
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        if names.len() != values.len() {
            return Err(Error::CharacterTable("names and characters differ in number".into()));
        }
        Ok(CharacterTable {
            group,
            classes,
            class_of,
            names,
            values,
            conductor,
        })
    }

    /// Parses a character-table file for `group`.
    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self> {
        let mut header = false;
        let mut reps: Option<Vec<usize>> = None;
        let mut names = Vec::new();
        let mut rows = Vec::new();
        let mut last = 1;
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            last = line_no;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let col = indent_col(line);
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("chartab") {
                if header {
                    return Err(Error::syntax(line_no, col, "duplicate `chartab` header"));
                }
                if rest.trim().is_empty() {
                    return Err(Error::syntax(line_no, col, "expected `chartab <name>`"));
                }
                header = true;
            } else if let Some(rest) = line.strip_prefix("classes:") {
                if !header {
                    return Err(Error::syntax(line_no, col, "`classes:` before `chartab` header"));
                }
                let list = rest
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::syntax(line_no, col + 8, "expected comma-separated element indices"))?;
                reps = Some(list);
            } else if let Some(rest) = line.strip_prefix("chi") {
                if reps.is_none() {
                    return Err(Error::syntax(line_no, col, "`chi` line before `classes:`"));
                }
                let (name, vals) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::syntax(line_no, col, "expected `chi <name>: <values>`"))?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(Error::syntax(line_no, col + 3, "missing character name"));
                }
                let vals_col = col + 3 + rest.find(':').unwrap_or(0) + 1;
                let row = vals
                    .split(',')
                    .map(|v| Cyclotomic::parse(v).map_err(|m| Error::syntax(line_no, vals_col, m)))
                    .collect::<Result<Vec<_>>>()?;
                names.push(name.to_string());
                rows.push(row);
            } else {
                return Err(Error::syntax(line_no, col, format!("unexpected line `{line}`")));
            }
        }
        if !header {
            return Err(Error::syntax(last, 1, "missing `chartab` header"));
        }
        let reps = reps.ok_or_else(|| Error::syntax(last, 1, "missing `classes:` line"))?;
        let classes = group.element_conjugacy_classes();
        let mut perm = Vec::with_capacity(classes.len());
        for (c, _) in &classes {
            match reps.iter().position(|r| r == c) {
                Some(p) => perm.push(p),
                None => {
                    return Err(Error::CharacterTable(format!(
                        "class of element {c} is not listed (listed representatives must be class minima)"
                    )))
                }
            }
        }
        if reps.len() != classes.len() {
            return Err(Error::CharacterTable(format!(
                "{} class representatives listed but {} has {} classes",
                reps.len(),
                group.name(),
                classes.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != reps.len() {
                return Err(Error::CharacterTable(format!(
                    "character {} has {} values, expected {}",
                    names[i],
                    row.len(),
                    reps.len()
                )));
            }
        }
        let values = rows
            .into_iter()
            .map(|row| perm.iter().map(|&p| row[p].clone()).collect())
            .collect();
        Self::new(group, names, values)
    }

    /// Characters of an abelian group from a cyclic decomposition.
    pub fn abelian(group: Arc<FiniteGroup>) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::CharacterTable(format!("{} is not abelian", group.name())));
        }
        let g = &*group;
        let factors = cyclic_decomposition(g);
        let e = g.exponent() as i64;
        // coordinates[x] = exponents a_i with x = Π g_i^{a_i}
        let mut coordinates = vec![Vec::new(); g.order()];
        let mut elems = vec![(0usize, Vec::<usize>::new())];
        for &(gen, n) in &factors {
            let mut next = Vec::new();
            for (x, coords) in &elems {
                let mut y = *x;
                for a in 0..n {
                    let mut c = coords.clone();
                    c.push(a);
                    next.push((y, c));
                    y = g.mul(y, gen);
                }
            }
            elems = next;
        }
        for (x, c) in elems {
            coordinates[x] = c;
        }
        let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
        for &(_, n) in &factors {
            labels = labels
                .into_iter()
                .flat_map(|l| {
                    (0..n).map(move |k| {
                        let mut l = l.clone();
                        l.push(k);
                        l
                    })
                })
                .collect();
        }
        let classes = g.element_conjugacy_classes();
        let mut names = Vec::new();
        let mut values = Vec::new();
        for label in labels {
            let name = if label.is_empty() {
                "triv".to_string()
            } else {
                format!(
                    "chi{}",
                    label.iter().map(usize::to_string).collect::<Vec<_>>().join("_")
                )
            };
            let row = classes
                .iter()
                .map(|(x, _)| {
                    let k: i64 = label
                        .iter()
                        .zip(&coordinates[*x])
                        .zip(&factors)
                        .map(|((&k, &a), &(_, n))| (k * a) as i64 * (e / n as i64))
                        .sum();
                    Cyclotomic::zeta_pow(e as u32, k)
                })
                .collect();
            names.push(name);
            values.push(row);
        }
        Self::new(group, names, values)
    }

    /// Checks orthogonality, degrees and the degree-sum formula; names the first failure.
    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        if self.values.len() != self.classes.len() {
            return Err(Error::CharacterTable(format!(
                "{} characters for {} classes",
                self.values.len(),
                self.classes.len()
            )));
        }
        let mut degree_sum = Q::zero();
        for (i, row) in self.values.iter().enumerate() {
            let d = row[0].to_rational();
            match d {
                Some(d) if d.is_integer() && d.is_positive() => degree_sum += &d * &d,
                _ => {
                    return Err(Error::CharacterTable(format!(
                        "degree of {} is {}, not a positive integer",
                        self.names[i], row[0]
                    )))
                }
            }
        }
        for i in 0..self.values.len() {
            for j in 0..=i {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let expected = if i == j { Q::one() } else { Q::zero() };
                if ip.to_rational() != Some(expected) {
                    return Err(Error::CharacterTable(format!(
                        "orthogonality fails for ({}, {}): inner product {ip}",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        if degree_sum != q(n as i64) {
            return Err(Error::CharacterTable(format!(
                "sum of squared degrees is {degree_sum}, expected {n}"
            )));
        }
        Ok(())
    }

    /// `(1/|G|) Σ_g a(g) · conj(b(g))` for class functions given per class.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.conductor);
        for ((_, members), (x, y)) in self.classes.iter().zip(a.iter().zip(b)) {
            let term = (x * &y.conj()).scale(&q(members.len() as i64));
            acc = &acc + &term;
        }
        acc.scale(&Q::new(1.into(), (self.group.order() as i64).into()))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn classes(&self) -> &[(usize, Vec<usize>)] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// `χ_i(g)`.
    pub fn value(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.values[i][self.class_of[g]]
    }

    pub fn degree(&self, i: usize) -> Q {
        self.values[i][0].to_rational().expect("validated degree")
    }

    /// The same characters on `target`, pulled back along an isomorphism `iso: target → self.group`.
    pub fn transport(&self, target: Arc<FiniteGroup>, iso: &[usize]) -> Result<Self> {
        let classes = target.element_conjugacy_classes();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, _)| classes.iter().map(|(x, _)| self.value(i, iso[*x]).clone()).collect())
            .collect();
        Self::new(target, self.names.clone(), values)
    }

    /// Table of `h` (a subgroup, reindexed in sorted element order as a group),
    /// generated when abelian and otherwise transported from `library`.
    pub fn for_group(group: Arc<FiniteGroup>, library: &[CharacterTable]) -> Result<Self> {
        if group.is_abelian() {
            return Self::abelian(group);
        }
        for t in library {
            if t.group.order() != group.order() {
                continue;
            }
            if let Some(iso) = find_isomorphism(&group, &t.group) {
                return t.transport(group, &iso);
            }
        }
        Err(Error::CharacterTable(format!(
            "no character table available for a non-abelian group of order {}",
            group.order()
        )))
    }
}

/// Greedy decomposition into cyclic factors `(generator, order)`, largest first.
pub fn cyclic_decomposition(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut factors = Vec::new();
    let mut rest = Subgroup::whole(g);
    while rest.order() > 1 {
        let gen = rest
            .iter()
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
            .expect("nonempty");
        let n = g.element_order(gen);
        let cyc = Subgroup::generated(g, &[gen]);
        let complement = crate::group::enumerate_subgroups(g, crate::group::MAX_ORDER)
            .expect("abelian group below the cap")
            .into_iter()
            .filter(|k| k.is_subgroup_of(&rest) && k.intersection(&cyc).order() == 1 && k.order() * n == rest.order())
            .min()
            .expect("a maximal cyclic subgroup of a finite abelian group has a complement");
        factors.push((gen, n));
        rest = complement;
    }
    factors
}

/// An isomorphism `a → b` as an element map, by search over images of generators.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.generators().to_vec();
    // Every element of a as a word: elements[i] = words[i] applied from the identity.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; a.order()];
    let mut order = vec![0];
    let mut seen = vec![false; a.order()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = a.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                word[y] = Some((x, k));
                order.push(y);
            }
        }
        i += 1;
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..b.order()).filter(|&y| b.element_order(y) == a.element_order(s)).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
        let mut map = vec![0; a.order()];
        for &x in order.iter().skip(1) {
            let (prev, k) = word[x].expect("reached by a word");
            map[x] = b.mul(map[prev], images[k]);
        }
        let mut hit = vec![false; b.order()];
        let bijective = map.iter().all(|&y| !std::mem::replace(&mut hit[y], true));
        if bijective
            && (0..a.order()).all(|x| (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
        {
            return Some(map);
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return None;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Matrix with entry `(j, i) = ⟨res_H χ_i, ψ_j⟩_H`, where `embedding` maps elements of
/// `sub`'s group into `big`'s group.
pub fn restriction_matrix(big: &CharacterTable, sub: &CharacterTable, embedding: &[usize]) -> Result<RationalMatrix> {
    let m = big.conductor;
    let mut out = RationalMatrix::zeros(sub.len(), big.len());
    for i in 0..big.len() {
        let res: Vec<Cyclotomic> = sub
            .classes
            .iter()
            .map(|(h, _)| big.value(i, embedding[*h]).clone())
            .collect();
        for j in 0..sub.len() {
            let psi: Vec<Cyclotomic> = sub.values[j].iter().map(|v| v.lift(m)).collect::<Result<_>>()?;
            let ip = sub_inner_product(sub, &res, &psi, m);
            match ip.to_rational() {
                Some(x) if x.is_integer() && !x.is_negative() => out.set(j, i, x),
                _ => {
                    return Err(Error::CharacterTable(format!(
                        "multiplicity of {} in the restriction of {} is {ip}",
                        sub.names[j], big.names[i]
                    )))
                }
            }
        }
    }
    Ok(out)
}

fn sub_inner_product(sub: &CharacterTable, a: &[Cyclotomic], b: &[Cyclotomic], m: u32) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(m);
    for ((_, members), (x, y)) in sub.classes.iter().zip(a.iter().zip(b)) {
        acc = &acc + &(x * &y.conj()).scale(&q(members.len() as i64));
    }
    acc.scale(&Q::new(1.into(), (sub.group.order() as i64).into()))
}

/// Transpose of the restriction matrix, checked against the degree formula for induction.
pub fn induction_matrix(big: &CharacterTable, sub: &CharacterTable, embedding: &[usize]) -> Result<RationalMatrix> {
    let ind = restriction_matrix(big, sub, embedding)?.transpose();
    let index = q((big.group.order() / sub.group.order()) as i64);
    for j in 0..sub.len() {
        let total = (0..big.len()).fold(Q::zero(), |acc, i| acc + ind.get(i, j) * big.degree(i));
        if total != &index * sub.degree(j) {
            return Err(Error::CharacterTable(format!(
                "induced degree of {} is {total}, expected {}",
                sub.names[j],
                &index * sub.degree(j)
            )));
        }
    }
    Ok(ind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn s3_table() -> CharacterTable {
        let g = Arc::new(data::group("S3").unwrap());
        CharacterTable::parse(data::character_table_text("S3").unwrap(), g).unwrap()
    }

    #[test]
    fn abelian_tables() {
        let t = CharacterTable::abelian(Arc::new(FiniteGroup::cyclic(2))).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.value(1, 1).to_rational(), Some(q(-1)));
        let t6 = CharacterTable::abelian(Arc::new(FiniteGroup::cyclic(6))).unwrap();
        assert_eq!(t6.len(), 6);
        assert_eq!(t6.conductor(), 6);
    }

    #[test]
    fn klein_four_decomposes() {
        let t = Arc::new(
            FiniteGroup::from_table(
                "V4",
                vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
            )
            .unwrap(),
        );
        assert_eq!(cyclic_decomposition(&t).len(), 2);
        assert_eq!(CharacterTable::abelian(t).unwrap().len(), 4);
    }

    #[test]
    fn s3_restrictions() {
        let big = s3_table();
        let g = Arc::clone(big.group());
        let c2 = Subgroup::from_elements(&g, &[0, 1]).unwrap();
        let c2g = Arc::new(c2.as_group(&g, "C2"));
        let sub = CharacterTable::abelian(c2g).unwrap();
        let r = restriction_matrix(&big, &sub, &c2.elements()).unwrap();
        assert_eq!(r, RationalMatrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]], 3));
        let c3 = Subgroup::from_elements(&g, &[0, 3, 4]).unwrap();
        let sub3 = CharacterTable::abelian(Arc::new(c3.as_group(&g, "C3"))).unwrap();
        let r3 = restriction_matrix(&big, &sub3, &c3.elements()).unwrap();
        assert_eq!(r3.column(2), vec![q(0), q(1), q(1)]);
        let ind = induction_matrix(&big, &sub3, &c3.elements()).unwrap();
        assert_eq!(ind.column(0), vec![q(1), q(1), q(0)]);
    }

    #[test]
    fn perturbed_table_rejected() {
        let g = Arc::new(data::group("S3").unwrap());
        let err = CharacterTable::parse(data::invalid_text("S3_perturbed.ctb").unwrap(), g).unwrap_err();
        assert!(err.to_string().contains("orthogonality"), "{err}");
    }

    #[test]
    fn transport_to_isomorphic_copy() {
        let big = s3_table();
        let g = big.group();
        let iso = find_isomorphism(g, g).unwrap();
        assert_eq!(iso[0], 0);
        assert!(CharacterTable::for_group(Arc::clone(g), std::slice::from_ref(&big)).is_ok());
    }
}
