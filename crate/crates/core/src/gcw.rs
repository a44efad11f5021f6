//! Finite G-CW complexes given by their cellular chain complexes of free
//! orbit-category modules, and their evaluations at subgroups.
//!
//! A boundary term `c*(j, g)` on a cell with isotropy `H` is the G-map
//! `G/H → G/H_j`, `eH ↦ gH_j`, which exists exactly when `g⁻¹Hg ⊆ H_j`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write};
use std::sync::Arc;

use crate::category::EICategory;
use crate::data;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupClassTable};
use crate::linalg::{q, quotient_representatives, GroupAction, RationalMatrix, Q};
use crate::text::{fmt_set, parse_set, strip_comment, tokens};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub isotropy: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub coeff: i64,
    /// Index of the target cell in the degree below.
    pub target: usize,
    pub element: usize,
}

#[derive(Clone, Debug)]
pub struct GCWComplex {
    name: String,
    group: Arc<FiniteGroup>,
    cells: Vec<Vec<Cell>>,
    /// `boundaries[n][i]`: formal boundary of the `i`-th `n`-cell; empty for `n = 0`.
    boundaries: Vec<Vec<Vec<BoundaryTerm>>>,
}

impl GCWComplex {
    /// Builds and validates a complex.
    pub fn new(
        name: impl Into<String>,
        group: Arc<FiniteGroup>,
        cells: Vec<Vec<Cell>>,
        boundaries: Vec<Vec<Vec<BoundaryTerm>>>,
    ) -> Result<Self> {
        let x = Self::new_unchecked(name, group, cells, boundaries)?;
        x.validate()?;
        Ok(x)
    }

    /// Checks only that indices are in range.
    pub fn new_unchecked(
        name: impl Into<String>,
        group: Arc<FiniteGroup>,
        cells: Vec<Vec<Cell>>,
        boundaries: Vec<Vec<Vec<BoundaryTerm>>>,
    ) -> Result<Self> {
        if cells.is_empty() || boundaries.len() != cells.len() {
            return Err(Error::Complex("one boundary list per degree is required".into()));
        }
        for n in 0..cells.len() {
            if boundaries[n].len() != cells[n].len() {
                return Err(Error::Complex(format!("degree {n}: one boundary per cell is required")));
            }
            for (i, terms) in boundaries[n].iter().enumerate() {
                if n == 0 && !terms.is_empty() {
                    return Err(Error::Complex(format!("0-cell {} has a boundary", cells[0][i].id)));
                }
                for t in terms {
                    if n > 0 && t.target >= cells[n - 1].len() || t.element >= group.order() {
                        return Err(Error::Complex(format!("boundary of {} is out of range", cells[n][i].id)));
                    }
                }
            }
        }
        Ok(GCWComplex {
            name: name.into(),
            group,
            cells,
            boundaries,
        })
    }

    /// One 0-cell with isotropy `G`.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let h = Subgroup::whole(&group);
        Self::orbit(group, h)
    }

    /// The orbit `G/H` as a single 0-cell.
    pub fn orbit(group: Arc<FiniteGroup>, h: Subgroup) -> Self {
        let name = if h == Subgroup::whole(&group) { "point".to_string() } else { format!("orbit:{h}") };
        GCWComplex {
            name,
            group,
            cells: vec![vec![Cell {
                id: "p".into(),
                isotropy: h,
            }]],
            boundaries: vec![vec![Vec::new()]],
        }
    }

    /// `point`, `orbit:{...}` (both over `group`) or a bundled space.
    pub fn builtin(name: &str, group: Option<Arc<FiniteGroup>>) -> Result<Self> {
        let need = |g: Option<Arc<FiniteGroup>>| g.ok_or_else(|| Error::Complex(format!("`{name}` needs a group")));
        if name == "point" {
            return Ok(Self::point(need(group)?));
        }
        if let Some(set) = name.strip_prefix("orbit:") {
            let g = need(group)?;
            let elems = parse_set(set).ok_or_else(|| Error::Complex(format!("invalid subgroup literal `{set}`")))?;
            let h = Subgroup::from_elements(&g, &elems)?;
            return Ok(Self::orbit(g, h));
        }
        let text = data::space_text(name)?;
        let g = match group {
            Some(g) => g,
            None => Arc::new(data::group(&declared_group(text)?)?),
        };
        Self::parse(text, g)
    }

    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self> {
        let x = Self::parse_unchecked(text, group)?;
        x.validate()?;
        Ok(x)
    }

    /// Parses without the morphism and `d∘d = 0` checks.
    pub fn parse_unchecked(text: &str, group: Arc<FiniteGroup>) -> Result<Self> {
        let mut name = None;
        let mut dim: Option<usize> = None;
        let mut group_seen = false;
        let mut cells: Vec<Option<Vec<Cell>>> = Vec::new();
        let mut where_is: HashMap<String, (usize, usize)> = HashMap::new();
        let mut raw_bounds: Vec<(usize, usize, String, Vec<(i64, String, usize, usize)>)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = strip_comment(raw);
            let toks = tokens(line);
            let Some(&(col, key)) = toks.first() else { continue };
            if name.is_none() && key != "gcw" {
                return Err(Error::syntax(line_no, col, "expected `gcw <name>` header"));
            }
            let arg = |i: usize| {
                toks.get(i)
                    .copied()
                    .ok_or_else(|| Error::syntax(line_no, col, format!("`{key}` line is missing arguments")))
            };
            match key {
                "gcw" => {
                    if name.is_some() {
                        return Err(Error::syntax(line_no, col, "duplicate `gcw` header"));
                    }
                    name = Some(arg(1)?.1.to_string());
                }
                "group" => {
                    let (c, g) = arg(1)?;
                    if g != group.name() {
                        return Err(Error::syntax(line_no, c, format!("complex is over {g}, expected {}", group.name())));
                    }
                    group_seen = true;
                }
                "dim" => {
                    let (c, d) = arg(1)?;
                    let d: usize = d.parse().map_err(|_| Error::syntax(line_no, c, format!("invalid dimension `{d}`")))?;
                    dim = Some(d);
                    cells = vec![None; d + 1];
                }
                "cells" => {
                    let d = dim.ok_or_else(|| Error::syntax(line_no, col, "`cells` before `dim`"))?;
                    let (c, deg) = arg(1)?;
                    let n: usize = deg
                        .strip_suffix(':')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::syntax(line_no, c, "expected `cells <n>:`"))?;
                    if n > d {
                        return Err(Error::syntax(line_no, c, format!("degree {n} exceeds dim {d}")));
                    }
                    if cells[n].is_some() {
                        return Err(Error::syntax(line_no, col, format!("duplicate `cells {n}` line")));
                    }
                    let body_start = line.find(':').map_or(line.len(), |p| p + 1);
                    let mut list = Vec::new();
                    let mut offset = body_start;
                    for part in line[body_start..].split(';') {
                        let pcol = offset + part.len() - part.trim_start().len() + 1;
                        offset += part.len() + 1;
                        if part.trim().is_empty() {
                            continue;
                        }
                        let (id, iso) = part
                            .split_once("iso=")
                            .ok_or_else(|| Error::syntax(line_no, pcol, "expected `<id> iso={...}`"))?;
                        let id = id.trim().to_string();
                        if id.is_empty() {
                            return Err(Error::syntax(line_no, pcol, "missing cell id"));
                        }
                        let icol = pcol + part.trim_start().find("iso=").unwrap_or(0) + 4;
                        let elems = parse_set(iso).ok_or_else(|| Error::syntax(line_no, icol, "invalid subgroup literal"))?;
                        let isotropy =
                            Subgroup::from_elements(&group, &elems).map_err(|e| Error::syntax(line_no, icol, e.to_string()))?;
                        if where_is.insert(id.clone(), (n, list.len())).is_some() {
                            return Err(Error::syntax(line_no, pcol, format!("duplicate cell id `{id}`")));
                        }
                        list.push(Cell { id, isotropy });
                    }
                    cells[n] = Some(list);
                }
                "boundary" => {
                    let (c, id) = arg(1)?;
                    if arg(2)?.1 != "=" {
                        return Err(Error::syntax(line_no, arg(2)?.0, "expected `=`"));
                    }
                    let rhs_col = arg(2)?.0 + 1;
                    let terms = parse_sum(&line[rhs_col - 1..], rhs_col, line_no)?;
                    raw_bounds.push((line_no, c, id.to_string(), terms));
                }
                other => return Err(Error::syntax(line_no, col, format!("unknown keyword `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| Error::syntax(1, 1, "empty G-CW file"))?;
        if !group_seen {
            return Err(Error::syntax(1, 1, "missing `group` line"));
        }
        if dim.is_none() {
            return Err(Error::syntax(1, 1, "missing `dim` line"));
        }
        let cells: Vec<Vec<Cell>> = cells.into_iter().map(Option::unwrap_or_default).collect();
        let mut boundaries: Vec<Vec<Option<Vec<BoundaryTerm>>>> = cells.iter().map(|c| vec![None; c.len()]).collect();
        for (line_no, c, id, terms) in raw_bounds {
            let &(n, i) = where_is
                .get(&id)
                .ok_or_else(|| Error::syntax(line_no, c, format!("unknown cell `{id}`")))?;
            if n == 0 {
                return Err(Error::syntax(line_no, c, format!("0-cell `{id}` cannot have a boundary")));
            }
            if boundaries[n][i].is_some() {
                return Err(Error::syntax(line_no, c, format!("duplicate boundary for `{id}`")));
            }
            let mut list = Vec::new();
            for (coeff, target, element, tcol) in terms {
                let &(m, j) = where_is
                    .get(&target)
                    .ok_or_else(|| Error::syntax(line_no, tcol, format!("unknown cell `{target}`")))?;
                if m + 1 != n {
                    return Err(Error::syntax(line_no, tcol, format!("`{target}` is not a {}-cell", n - 1)));
                }
                if element >= group.order() {
                    return Err(Error::syntax(line_no, tcol, format!("element {element} is not in {}", group.name())));
                }
                list.push(BoundaryTerm { coeff, target: j, element });
            }
            boundaries[n][i] = Some(list);
        }
        let boundaries = boundaries
            .into_iter()
            .map(|deg| deg.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        Self::new_unchecked(name, group, cells, boundaries)
    }

    /// Checks that every boundary term is a G-map and that `d∘d = 0` as formal sums.
    pub fn validate(&self) -> Result<()> {
        let g = &*self.group;
        for n in 1..self.cells.len() {
            for (i, terms) in self.boundaries[n].iter().enumerate() {
                let h = self.cells[n][i].isotropy;
                for t in terms {
                    let k = self.cells[n - 1][t.target].isotropy;
                    if !h.conjugate(g, g.inv(t.element)).is_subgroup_of(&k) {
                        return Err(Error::Complex(format!(
                            "boundary of {}: ({}, {}) is not a G-map G/{h} → G/{k}, since {}⁻¹·{h}·{} is not contained in {k}",
                            self.cells[n][i].id, self.cells[n - 1][t.target].id, t.element, t.element, t.element
                        )));
                    }
                }
            }
        }
        for n in 2..self.cells.len() {
            for i in 0..self.cells[n].len() {
                let residual = self.formal_dd(n, i);
                if !residual.is_empty() {
                    let sum = residual
                        .iter()
                        .map(|(&(j, x), &c)| format!("{c}*({}, {x})", self.cells[n - 2][j].id))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    return Err(Error::Complex(format!(
                        "d∘d is not zero on {}: residual {sum}",
                        self.cells[n][i].id
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d(d(e_i))` collected over `(cell, coset g·H)`, coset by its least element.
    fn formal_dd(&self, n: usize, i: usize) -> BTreeMap<(usize, usize), i64> {
        let g = &*self.group;
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for t in &self.boundaries[n][i] {
            for s in &self.boundaries[n - 1][t.target] {
                let k = self.cells[n - 2][s.target].isotropy;
                let x = g.mul(t.element, s.element);
                let coset = k.iter().map(|y| g.mul(x, y)).min().expect("nonempty coset");
                *acc.entry((s.target, coset)).or_default() += t.coeff * s.coeff;
            }
        }
        acc.retain(|_, c| *c != 0);
        acc
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        self.cells.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, n: usize, i: usize) -> &[BoundaryTerm] {
        &self.boundaries[n][i]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gcw {}", self.name);
        let _ = writeln!(out, "group {}", self.group.name());
        let _ = writeln!(out, "dim {}", self.dim());
        for (n, cells) in self.cells.iter().enumerate() {
            let parts: Vec<String> = cells
                .iter()
                .map(|c| format!("{} iso={}", c.id, fmt_set(&c.isotropy.elements())))
                .collect();
            let _ = writeln!(out, "cells {n}: {}", parts.join("; "));
        }
        for n in 1..self.cells.len() {
            for (i, terms) in self.boundaries[n].iter().enumerate() {
                let mut sum = String::new();
                for (k, t) in terms.iter().enumerate() {
                    let target = &self.cells[n - 1][t.target].id;
                    match (k, t.coeff < 0) {
                        (0, false) => {}
                        (0, true) => sum.push('-'),
                        (_, false) => sum.push_str(" + "),
                        (_, true) => sum.push_str(" - "),
                    }
                    let _ = write!(sum, "{}*({target}, {})", t.coeff.abs(), t.element);
                }
                if sum.is_empty() {
                    sum.push('0');
                }
                let _ = writeln!(out, "boundary {} = {sum}", self.cells[n][i].id);
            }
        }
        out
    }

    /// Class and class conjugator of each cell's isotropy.
    fn transport(&self, table: &SubgroupClassTable) -> Result<Vec<Vec<(usize, usize)>>> {
        self.cells
            .iter()
            .map(|cells| cells.iter().map(|c| table.locate(&c.isotropy)).collect())
            .collect()
    }

    /// `C_*(X^H)`: cells `xH_i` with `x⁻¹Hx ⊆ H_i`, with the trivial group acting.
    pub fn fixed_point_chain(&self, h: &Subgroup) -> EvaluatedChainComplex {
        let g = &*self.group;
        let mut generators: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut index: Vec<HashMap<(usize, usize), usize>> = Vec::new();
        for cells in &self.cells {
            let mut gens = Vec::new();
            for (i, c) in cells.iter().enumerate() {
                let k = c.isotropy;
                for x in 0..g.order() {
                    let least = k.iter().map(|y| g.mul(x, y)).min().expect("nonempty coset");
                    if least == x && h.conjugate(g, g.inv(x)).is_subgroup_of(&k) {
                        gens.push((i, x));
                    }
                }
            }
            index.push(gens.iter().enumerate().map(|(p, &key)| (key, p)).collect());
            generators.push(gens);
        }
        let mut boundaries = vec![RationalMatrix::zeros(0, generators[0].len())];
        for n in 1..self.cells.len() {
            let mut d = RationalMatrix::zeros(generators[n - 1].len(), generators[n].len());
            for (col, &(i, x)) in generators[n].iter().enumerate() {
                for t in &self.boundaries[n][i] {
                    let k = self.cells[n - 1][t.target].isotropy;
                    let y = g.mul(x, t.element);
                    let least = k.iter().map(|z| g.mul(y, z)).min().expect("nonempty coset");
                    let row = index[n - 1][&(t.target, least)];
                    *d.entry_mut(row, col) += q(t.coeff);
                }
            }
            boundaries.push(d);
        }
        let trivial = Arc::new(FiniteGroup::trivial());
        let action = generators
            .iter()
            .map(|gens| GroupAction::trivial(Arc::clone(&trivial), gens.len()))
            .collect();
        EvaluatedChainComplex {
            generators,
            boundaries,
            action,
        }
    }

    /// `C_*(C_G H \ X^H)` for the representative of class `c`, generated by
    /// `mor_Sub(H, H_i)` over the cells, with `W_G H = aut(H)` acting by
    /// precomposition.
    pub fn quotient_chain(&self, cat: &EICategory, c: usize) -> Result<EvaluatedChainComplex> {
        let table = cat.subgroups();
        if !table.group().same_table(&self.group) {
            return Err(Error::GroupMismatch("category and complex have different groups".into()));
        }
        let g = &*self.group;
        let tr = self.transport(table)?;
        let mut generators: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut offsets: Vec<Vec<usize>> = Vec::new();
        for n in 0..self.cells.len() {
            let mut gens = Vec::new();
            let mut off = Vec::new();
            for (i, &(ci, _)) in tr[n].iter().enumerate() {
                off.push(gens.len());
                gens.extend((0..cat.mor_count(c, ci)).map(|f| (i, f)));
            }
            generators.push(gens);
            offsets.push(off);
        }
        let mut boundaries = vec![RationalMatrix::zeros(0, generators[0].len())];
        for n in 1..self.cells.len() {
            let mut d = RationalMatrix::zeros(generators[n - 1].len(), generators[n].len());
            for (col, &(i, f)) in generators[n].iter().enumerate() {
                let (ci, ti) = tr[n][i];
                let gf = cat.mor(c, ci)[f];
                for t in &self.boundaries[n][i] {
                    let (cj, tj) = tr[n - 1][t.target];
                    let elem = g.mul(g.mul(g.inv(tj), g.inv(t.element)), g.mul(ti, gf));
                    let u = cat.index_of(c, cj, elem).ok_or_else(|| {
                        Error::Complex(format!("boundary of {} does not descend to the quotient", self.cells[n][i].id))
                    })?;
                    *d.entry_mut(offsets[n - 1][t.target] + u, col) += q(t.coeff);
                }
            }
            boundaries.push(d);
        }
        let aut = cat.aut(c);
        let action = (0..self.cells.len())
            .map(|n| {
                let gens = &generators[n];
                let off = &offsets[n];
                GroupAction::permutation(Arc::clone(aut), gens.len(), |w, p| {
                    let (i, f) = gens[p];
                    let ci = tr[n][i].0;
                    off[i] + cat.then(c, c, ci, aut.inv(w), f)
                })
            })
            .collect();
        Ok(EvaluatedChainComplex {
            generators,
            boundaries,
            action,
        })
    }

    /// Euler characteristics of `C_*(X^H)` and of its homology for every subgroup class.
    pub fn euler_check(&self, table: &SubgroupClassTable) -> EulerReport {
        let mut rows = Vec::new();
        for c in 0..table.num_classes() {
            let chain = self.fixed_point_chain(&table.rep(c));
            rows.push((table.rep(c), chain.euler_characteristic(), chain.homology_euler_characteristic()));
        }
        EulerReport { rows }
    }
}

/// Name of the group declared in a G-CW or Mackey file, without parsing the rest.
pub fn declared_group(text: &str) -> Result<String> {
    for (ln, raw) in text.lines().enumerate() {
        let toks = tokens(strip_comment(raw));
        if let [(_, "group"), (_, name), ..] = toks.as_slice() {
            return Ok(name.to_string());
        }
        if toks.first().map(|t| t.1) == Some("group") {
            return Err(Error::syntax(ln + 1, toks[0].0, "expected `group <name>`"));
        }
    }
    Err(Error::syntax(1, 1, "missing `group` line"))
}

/// Parses `c1*(id1, g1) - c2*(id2, g2) + ...` (or `0`) into `(coeff, id, element, column)`.
fn parse_sum(s: &str, col0: usize, line: usize) -> Result<Vec<(i64, String, usize, usize)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    let col_at = |p: usize| col0 + chars.get(p).map_or(s.len(), |c| c.0);
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].1.is_whitespace() {
            *pos += 1;
        }
    };
    if s.trim() == "0" {
        return Ok(out);
    }
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        let term_col = col_at(pos);
        let mut sign = 1;
        match chars[pos].1 {
            '+' | '-' => {
                if chars[pos].1 == '-' {
                    sign = -1;
                }
                pos += 1;
                skip_ws(&mut pos);
            }
            _ if !out.is_empty() => return Err(Error::syntax(line, term_col, "expected `+` or `-` between terms")),
            _ => {}
        }
        let start = pos;
        while pos < chars.len() && chars[pos].1.is_ascii_digit() {
            pos += 1;
        }
        let mut coeff: i64 = 1;
        if pos > start {
            let digits: String = chars[start..pos].iter().map(|c| c.1).collect();
            coeff = digits
                .parse()
                .map_err(|_| Error::syntax(line, col_at(start), "coefficient out of range"))?;
            skip_ws(&mut pos);
            if pos >= chars.len() || chars[pos].1 != '*' {
                let msg = if chars.get(pos).map(|c| c.1) == Some('/') {
                    "coefficients must be integers"
                } else {
                    "expected `*` after the coefficient"
                };
                return Err(Error::syntax(line, col_at(pos), msg));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos >= chars.len() || chars[pos].1 != '(' {
            return Err(Error::syntax(line, col_at(pos), "expected `(cell, element)`"));
        }
        let close = chars[pos..]
            .iter()
            .position(|c| c.1 == ')')
            .map(|p| p + pos)
            .ok_or_else(|| Error::syntax(line, col_at(pos), "unclosed `(`"))?;
        let inner: String = chars[pos + 1..close].iter().map(|c| c.1).collect();
        let (id, elem) = inner
            .split_once(',')
            .ok_or_else(|| Error::syntax(line, col_at(pos), "expected `(cell, element)`"))?;
        let element = elem
            .trim()
            .parse()
            .map_err(|_| Error::syntax(line, col_at(pos), format!("invalid element `{}`", elem.trim())))?;
        out.push((sign * coeff, id.trim().to_string(), element, term_col));
        pos = close + 1;
    }
    if out.is_empty() {
        return Err(Error::syntax(line, col0, "empty boundary; write `0`"));
    }
    Ok(out)
}

/// A finite chain complex of `Q`-vector spaces with a group acting by chain maps.
#[derive(Clone, Debug)]
pub struct EvaluatedChainComplex {
    /// Labels of the basis in each degree: `(cell, coset or morphism)`.
    pub generators: Vec<Vec<(usize, usize)>>,
    /// `boundaries[n]: C_n → C_{n-1}`; `boundaries[0]` has no rows.
    pub boundaries: Vec<RationalMatrix>,
    pub action: Vec<GroupAction>,
}

impl EvaluatedChainComplex {
    pub fn top(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.generators.get(n).map_or(0, Vec::len)
    }

    /// `∂_n`, zero outside the stored range.
    pub fn boundary(&self, n: usize) -> RationalMatrix {
        match self.boundaries.get(n) {
            Some(d) => d.clone(),
            None => RationalMatrix::zeros(self.dim(n.saturating_sub(1)), self.dim(n)),
        }
    }

    /// Checks `∂∂ = 0` and that the action commutes with `∂`.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.boundaries.len() {
            if !(&self.boundaries[n - 1] * &self.boundaries[n]).is_zero() {
                return Err(Error::Complex(format!("∂∘∂ is not zero from degree {n}")));
            }
        }
        for n in 1..self.boundaries.len() {
            let grp = self.action[n].group();
            for w in 0..grp.order() {
                let lhs = &self.boundaries[n] * self.action[n].matrix(w);
                let rhs = self.action[n - 1].matrix(w) * &self.boundaries[n];
                if lhs != rhs {
                    return Err(Error::Complex(format!("action of {w} does not commute with ∂ in degree {n}")));
                }
            }
        }
        Ok(())
    }

    /// `H_p` with the induced action, on echelon-canonical representatives.
    pub fn homology(&self, p: usize) -> Result<Homology> {
        if p > self.top() {
            return Ok(Homology {
                degree: p,
                boundaries: RationalMatrix::zeros(0, 0),
                reps: RationalMatrix::zeros(0, 0),
                action: GroupAction::trivial(Arc::clone(self.action[0].group()), 0),
            });
        }
        let cycles = self.boundary(p).kernel_basis();
        let boundaries = self.boundary(p + 1).image_basis();
        let reps = quotient_representatives(&boundaries, &cycles);
        let action = self.action[p].on_quotient(&boundaries, &reps)?;
        Ok(Homology {
            degree: p,
            boundaries,
            reps,
            action,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims().iter().enumerate().map(|(n, &d)| sign(n) * d as i64).sum()
    }

    /// `Σ (−1)ⁿ dim(Z_n / (Z_n ∩ B_n))`, computed without assuming `B_n ⊆ Z_n`.
    pub fn homology_euler_characteristic(&self) -> i64 {
        (0..=self.top())
            .map(|n| {
                let z = self.boundary(n).kernel_basis();
                let b = self.boundary(n + 1).image_basis();
                let sum = RationalMatrix::hstack(&[&z, &b]).rank();
                let meet = z.cols() + b.cols() - sum;
                sign(n) * (z.cols() - meet) as i64
            })
            .sum()
    }
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    /// Basis of the boundaries `B_p`.
    pub boundaries: RationalMatrix,
    /// Cycles representing a basis of `H_p`.
    pub reps: RationalMatrix,
    pub action: GroupAction,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the class of a cycle `z`.
    pub fn class_of(&self, z: &[Q]) -> Result<Vec<Q>> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        let full = RationalMatrix::hstack(&[&self.boundaries, &self.reps]);
        let x = full.solve(z).map_err(|_| Error::Verification("vector is not a cycle".into()))?;
        Ok(x[self.boundaries.cols()..].to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    /// `(H, χ(C_*(X^H)), χ(H_*(X^H)))` per class representative.
    pub rows: Vec<(Subgroup, i64, i64)>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.1 == r.2)
    }

    pub fn first_failure(&self) -> Option<&(Subgroup, i64, i64)> {
        self.rows.iter().find(|r| r.1 != r.2)
    }
}

impl fmt::Display for EulerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (h, a, b) in &self.rows {
            let verdict = if a == b { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict} euler H = {h}: cells {a}, homology {b}")?;
        }
        Ok(())
    }
}
