//! Finite groups given by multiplication tables.

mod lattice;

pub use lattice::{
    double_cosets, enumerate_subgroups, DoubleCosetDecomposition, Subgroup, SubgroupClass, SubgroupClassTable,
    WeylGroup,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::text::{strip_comment, tokens};

/// Default and maximal number of elements for subgroup enumeration.
pub const MAX_ORDER: usize = 64;

/// A finite group stored as its full multiplication table. Element `0` is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a table (`table[g][h] = g·h`) and builds the group.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {g} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} in row {g} is out of range")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity for {g}")));
            }
        }
        for g in 0..n {
            let mut seen = vec![false; n];
            for h in 0..n {
                seen[table[g][h]] = true;
            }
            if let Some(x) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidGroup(format!("row {g} is not a permutation (misses {x})")));
            }
            let mut seen = vec![false; n];
            for h in 0..n {
                seen[table[h][g]] = true;
            }
            if let Some(x) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidGroup(format!("column {g} is not a permutation (misses {x})")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    let left = table[ab][c];
                    let right = table[a][table[b][c]];
                    if left != right {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c}): ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0; n];
        for g in 0..n {
            match (0..n).find(|&h| table[h][g] == 0) {
                Some(h) if table[g][h] == 0 => inverses[g] = h,
                _ => return Err(Error::InvalidGroup(format!("element {g} has no two-sided inverse"))),
            }
        }
        let mut group = FiniteGroup {
            name: name.into(),
            order: n,
            table: table.into_iter().flatten().collect(),
            inverses,
            generators: Vec::new(),
        };
        group.generators = group.greedy_generators();
        Ok(group)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), table).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Parses the line-oriented group file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut order = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut last_line = 0;
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            last_line = line_no;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let col = line.len() - line.trim_start().len() + 1;
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("group") {
                if name.is_some() {
                    return Err(Error::syntax(line_no, col, "duplicate `group` header"));
                }
                let n = rest.trim();
                if n.is_empty() || !rest.starts_with(char::is_whitespace) {
                    return Err(Error::syntax(line_no, col, "expected `group <name>`"));
                }
                name = Some(n.to_string());
            } else if let Some(rest) = line.strip_prefix("order") {
                if name.is_none() {
                    return Err(Error::syntax(line_no, col, "`order` before `group` header"));
                }
                if order.is_some() {
                    return Err(Error::syntax(line_no, col, "duplicate `order` line"));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::syntax(line_no, col + 6, "expected a positive integer order"))?;
                if n == 0 {
                    return Err(Error::syntax(line_no, col + 6, "order must be positive"));
                }
                order = Some(n);
            } else {
                let Some(n) = order else {
                    return Err(Error::syntax(line_no, col, "table row before `group`/`order` header"));
                };
                if rows.len() == n {
                    return Err(Error::syntax(line_no, col, format!("more than {n} table rows")));
                }
                let mut row = Vec::with_capacity(n);
                for (at, tok) in tokens(strip_comment(raw)) {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::syntax(line_no, at, format!("`{tok}` is not an element index")))?;
                    if v >= n {
                        return Err(Error::syntax(line_no, at, format!("element {v} out of range 0..{n}")));
                    }
                    row.push(v);
                }
                if row.len() != n {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        format!("row has {} entries, expected {n}", row.len()),
                    ));
                }
                rows.push(row);
            }
        }
        let Some(name) = name else {
            return Err(Error::syntax(last_line.max(1), 1, "missing `group` header"));
        };
        let Some(n) = order else {
            return Err(Error::syntax(last_line.max(1), 1, "missing `order` line"));
        };
        if rows.len() != n {
            return Err(Error::syntax(
                last_line.max(1),
                1,
                format!("expected {n} table rows, found {}", rows.len()),
            ));
        }
        Self::from_table(name, rows)
    }

    /// Renders the group in the file format accepted by [`FiniteGroup::parse`].
    pub fn to_text(&self) -> String {
        let w = (self.order - 1).to_string().len();
        let mut s = format!("group {}\norder {}\n", self.name, self.order);
        for g in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|h| format!("{:>w$}", self.mul(g, h)))
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// `g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Closure of a set of elements under multiplication, as a sorted list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for g in 1..self.order {
            if !inside[g] {
                gens.push(g);
                for x in self.closure(&gens) {
                    inside[x] = true;
                }
            }
        }
        gens
    }

    /// Element conjugacy classes, sorted by minimal representative.
    pub fn element_conjugacy_classes(&self) -> Vec<(usize, Vec<usize>)> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push((g, class));
        }
        out
    }

    /// Builds the group whose elements are `elems` (sorted, containing 0, closed), reindexed in order.
    pub fn subgroup_as_group(&self, name: impl Into<String>, elems: &[usize]) -> Result<FiniteGroup> {
        let pos = |x: usize| elems.iter().position(|&e| e == x);
        let mut table = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                let p = pos(self.mul(a, b))
                    .ok_or_else(|| Error::NotSubgroup(format!("{a}*{b} leaves the subset")))?;
                row.push(p);
            }
            table.push(row);
        }
        FiniteGroup::from_table(name, table)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "group S3\norder 6\n0 1 2 3 4 5\n1 0 4 5 2 3\n2 3 0 1 5 4\n3 2 5 4 0 1\n4 5 1 0 3 2\n5 4 3 2 1 0\n";

    #[test]
    fn trivial_group_parses() {
        let g = FiniteGroup::parse("group one\norder 1\n0\n").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn z2_parses() {
        let g = FiniteGroup::parse("group Z2\norder 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn s3_classes() {
        let g = FiniteGroup::parse(S3).unwrap();
        let sizes: Vec<usize> = g.element_conjugacy_classes().iter().map(|c| c.1.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
        assert_eq!(FiniteGroup::parse(&g.to_text()).unwrap().table, g.table);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match FiniteGroup::parse("group Z2\norder 2\n0 1\n1 x\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FiniteGroup::parse("group Z2\norder 2\n0 1\n"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table("L5", t) {
            Err(Error::InvalidGroup(msg)) => assert!(msg.contains("not associative"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
