//! Line-oriented text format.
//!
//! ```text
//! mackey <name>
//! group <group name>
//! object <rep> dim <m>          one per subgroup class representative
//! res <rep> <K>                 followed by dim(K) rows of dim(rep) rationals
//! ind <K> <rep>                 followed by dim(rep) rows of dim(K) rationals
//! conj <g> <rep>                optional, g in the normalizer; default identity
//! ```
//!
//! A block whose matrix has a zero dimension takes no rows. Omitted `res`/`ind`
//! blocks are filled in by conjugating a block given for another subgroup in the
//! same normalizer orbit; `res`/`ind` from a representative to itself default to
//! the identity.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use super::MackeyFunctor;
use crate::error::{Error, Result};
use crate::group::{Subgroup, SubgroupClassTable};
use crate::linalg::{parse_q, RationalMatrix};
use crate::text::{indent_col, parse_set, strip_comment, tokens};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Res,
    Ind,
    Conj,
}

struct Block {
    kind: Kind,
    line: usize,
    class: usize,
    /// The smaller subgroup for `res`/`ind`.
    sub: Subgroup,
    element: usize,
    rows: usize,
    cols: usize,
    data: Vec<Vec<crate::linalg::Q>>,
}

impl MackeyFunctor {
    pub fn parse(text: &str, table: Arc<SubgroupClassTable>) -> Result<Self> {
        let g = Arc::clone(table.group());
        let n = table.num_classes();
        let mut name: Option<String> = None;
        let mut group_seen = false;
        let mut dims: Vec<Option<usize>> = vec![None; n];
        let mut blocks: Vec<Block> = Vec::new();
        let mut last = 0;

        let subgroup = |line: usize, col: usize, s: &str| -> Result<Subgroup> {
            let elems = parse_set(s).ok_or_else(|| Error::syntax(line, col, format!("expected a subgroup literal, found `{s}`")))?;
            Subgroup::from_elements(&g, &elems).map_err(|e| Error::syntax(line, col, e.to_string()))
        };
        let rep_class = |line: usize, col: usize, h: &Subgroup| -> Result<usize> {
            table.class_with_rep(h).ok_or_else(|| {
                let hint = table.class_of(h).map(|c| format!("; its representative is {}", table.rep(c)));
                Error::syntax(line, col, format!("{h} is not a class representative{}", hint.unwrap_or_default()))
            })
        };

        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            last = line_no;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let toks = tokens(line);
            if let Some(b) = blocks.last_mut() {
                if b.data.len() < b.rows && b.cols > 0 {
                    if toks.len() != b.cols {
                        return Err(Error::syntax(
                            line_no,
                            indent_col(line),
                            format!("expected {} entries, found {}", b.cols, toks.len()),
                        ));
                    }
                    let row = toks
                        .iter()
                        .map(|(c, t)| parse_q(t).ok_or_else(|| Error::syntax(line_no, *c, format!("invalid rational `{t}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    b.data.push(row);
                    continue;
                }
            }
            let (col, key) = toks[0];
            let arg = |i: usize| -> Result<(usize, &str)> {
                toks.get(i)
                    .copied()
                    .ok_or_else(|| Error::syntax(line_no, col, format!("`{key}` line is missing arguments")))
            };
            if name.is_none() && key != "mackey" {
                return Err(Error::syntax(line_no, col, "expected `mackey <name>` header"));
            }
            match key {
                "mackey" => {
                    if name.is_some() {
                        return Err(Error::syntax(line_no, col, "duplicate `mackey` header"));
                    }
                    name = Some(arg(1)?.1.to_string());
                }
                "group" => {
                    let (c, gname) = arg(1)?;
                    if gname != g.name() {
                        return Err(Error::syntax(line_no, c, format!("functor is over {gname}, expected {}", g.name())));
                    }
                    group_seen = true;
                }
                "object" => {
                    let (c, s) = arg(1)?;
                    let h = subgroup(line_no, c, s)?;
                    let class = rep_class(line_no, c, &h)?;
                    if arg(2)?.1 != "dim" {
                        return Err(Error::syntax(line_no, arg(2)?.0, "expected `dim`"));
                    }
                    let (c3, d) = arg(3)?;
                    let d = d
                        .parse()
                        .map_err(|_| Error::syntax(line_no, c3, format!("invalid dimension `{d}`")))?;
                    if dims[class].replace(d).is_some() {
                        return Err(Error::syntax(line_no, c, format!("duplicate object {h}")));
                    }
                }
                "res" | "ind" => {
                    let kind = if key == "res" { Kind::Res } else { Kind::Ind };
                    let ((ca, a), (cb, b)) = (arg(1)?, arg(2)?);
                    let (big_col, big, small_col, small) = match kind {
                        Kind::Res => (ca, a, cb, b),
                        _ => (cb, b, ca, a),
                    };
                    let h = subgroup(line_no, big_col, big)?;
                    let class = rep_class(line_no, big_col, &h)?;
                    let k = subgroup(line_no, small_col, small)?;
                    if !k.is_subgroup_of(&h) {
                        return Err(Error::syntax(line_no, small_col, format!("{k} is not contained in {h}")));
                    }
                    let dh = declared(&dims, class, line_no, big_col, &h)?;
                    let kc = table.class_of(&k)?;
                    let dk = declared(&dims, kc, line_no, small_col, &k)?;
                    let (rows, cols) = if kind == Kind::Res { (dk, dh) } else { (dh, dk) };
                    if blocks.iter().any(|b| b.kind == kind && b.class == class && b.sub == k) {
                        return Err(Error::syntax(line_no, col, format!("duplicate `{key}` block")));
                    }
                    blocks.push(Block {
                        kind,
                        line: line_no,
                        class,
                        sub: k,
                        element: 0,
                        rows,
                        cols,
                        data: Vec::new(),
                    });
                }
                "conj" => {
                    let ((ce, e), (ch, hs)) = (arg(1)?, arg(2)?);
                    let x: usize = e
                        .parse()
                        .ok()
                        .filter(|&x| x < g.order())
                        .ok_or_else(|| Error::syntax(line_no, ce, format!("invalid element `{e}`")))?;
                    let h = subgroup(line_no, ch, hs)?;
                    let class = rep_class(line_no, ch, &h)?;
                    if !table.class(class).normalizer.contains(x) {
                        return Err(Error::syntax(line_no, ce, format!("{x} does not normalize {h}")));
                    }
                    let d = declared(&dims, class, line_no, ch, &h)?;
                    if blocks.iter().any(|b| b.kind == Kind::Conj && b.class == class && b.element == x) {
                        return Err(Error::syntax(line_no, col, "duplicate `conj` block"));
                    }
                    blocks.push(Block {
                        kind: Kind::Conj,
                        line: line_no,
                        class,
                        sub: h,
                        element: x,
                        rows: d,
                        cols: d,
                        data: Vec::new(),
                    });
                }
                other => return Err(Error::syntax(line_no, col, format!("unknown keyword `{other}`"))),
            }
        }
        if let Some(b) = blocks.last() {
            if b.cols > 0 && b.data.len() < b.rows {
                return Err(Error::syntax(last + 1, 1, format!("block at line {} needs {} rows", b.line, b.rows)));
            }
        }
        let name = name.ok_or_else(|| Error::syntax(1, 1, "empty Mackey functor file"))?;
        if !group_seen {
            return Err(Error::syntax(1, 1, "missing `group` line"));
        }
        let dims: Vec<usize> = dims
            .iter()
            .enumerate()
            .map(|(c, d)| d.ok_or_else(|| Error::Mackey(format!("no object line for {}", table.rep(c)))))
            .collect::<Result<_>>()?;

        let mut conj: Vec<BTreeMap<usize, RationalMatrix>> = vec![BTreeMap::new(); n];
        let mut res: Vec<BTreeMap<Subgroup, RationalMatrix>> = vec![BTreeMap::new(); n];
        let mut ind: Vec<BTreeMap<Subgroup, RationalMatrix>> = vec![BTreeMap::new(); n];
        for b in blocks {
            let m = if b.cols == 0 {
                RationalMatrix::zeros(b.rows, 0)
            } else {
                RationalMatrix::from_rows(&b.data)
            };
            match b.kind {
                Kind::Res => res[b.class].insert(b.sub, m),
                Kind::Ind => ind[b.class].insert(b.sub, m),
                Kind::Conj => conj[b.class].insert(b.element, m),
            };
        }
        for c in 0..n {
            for x in table.class(c).normalizer.iter() {
                conj[c].entry(x).or_insert_with(|| RationalMatrix::identity(dims[c]));
            }
        }
        let mut m = MackeyFunctor {
            name,
            table: Arc::clone(&table),
            dims,
            conj,
            res,
            ind,
        };
        m.fill_missing()?;
        m.check_shapes()?;
        Ok(m)
    }

    /// Completes `res`/`ind` from blocks given for normalizer-conjugate subgroups.
    fn fill_missing(&mut self) -> Result<()> {
        let table = Arc::clone(&self.table);
        let g = Arc::clone(table.group());
        for c in 0..table.num_classes() {
            let r = table.rep(c);
            let normalizer = table.class(c).normalizer;
            for k in table.subgroups().iter().filter(|k| k.is_subgroup_of(&r)) {
                let dk = self.dims[table.class_of(k)?];
                let dr = self.dims[c];
                for kind in [Kind::Res, Kind::Ind] {
                    let have = match kind {
                        Kind::Res => &self.res[c],
                        _ => &self.ind[c],
                    };
                    if have.contains_key(k) {
                        continue;
                    }
                    let filled = if *k == r {
                        RationalMatrix::identity(dr)
                    } else if dk == 0 || dr == 0 {
                        match kind {
                            Kind::Res => RationalMatrix::zeros(dk, dr),
                            _ => RationalMatrix::zeros(dr, dk),
                        }
                    } else {
                        let source = normalizer.iter().find_map(|x| {
                            let k0 = k.conjugate(&g, g.inv(x));
                            have.get(&k0).map(|m| (x, k0, m.clone()))
                        });
                        let (x, k0, m0) = source.ok_or_else(|| {
                            let key = if kind == Kind::Res { format!("res {r} {k}") } else { format!("ind {k} {r}") };
                            Error::Mackey(format!("missing block `{key}`"))
                        })?;
                        let on_k = self.conj(x, &k0)?;
                        let on_r = self.conj(x, &r)?;
                        let singular = || Error::Mackey(format!("conj {x} is not invertible"));
                        match kind {
                            Kind::Res => &(&on_k * &m0) * &on_r.inverse().ok_or_else(singular)?,
                            _ => &(&on_r * &m0) * &on_k.inverse().ok_or_else(singular)?,
                        }
                    };
                    match kind {
                        Kind::Res => self.res[c].insert(*k, filled),
                        _ => self.ind[c].insert(*k, filled),
                    };
                }
            }
        }
        Ok(())
    }

    /// Serializes every stored block; `parse` reads the output back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.table;
        let _ = writeln!(out, "mackey {}", self.name);
        let _ = writeln!(out, "group {}", t.group().name());
        for c in 0..t.num_classes() {
            let _ = writeln!(out, "object {} dim {}", t.rep(c), self.dims[c]);
        }
        let emit = |out: &mut String, header: String, m: &RationalMatrix| {
            out.push_str(&header);
            out.push('\n');
            if m.cols() > 0 {
                for row in m.to_text_rows() {
                    out.push_str(&row);
                    out.push('\n');
                }
            }
        };
        for c in 0..t.num_classes() {
            let r = t.rep(c);
            for (x, m) in &self.conj[c] {
                if !m.is_identity() {
                    emit(&mut out, format!("conj {x} {r}"), m);
                }
            }
            for (k, m) in &self.res[c] {
                emit(&mut out, format!("res {r} {k}"), m);
            }
            for (k, m) in &self.ind[c] {
                emit(&mut out, format!("ind {k} {r}"), m);
            }
        }
        out
    }
}

fn declared(dims: &[Option<usize>], class: usize, line: usize, col: usize, h: &Subgroup) -> Result<usize> {
    dims[class].ok_or_else(|| Error::syntax(line, col, format!("no object line precedes the use of {h}")))
}
