use std::sync::Arc;

use bredon_core::category::EICategory;
use bredon_core::data;
use bredon_core::gcw::GCWComplex;
use bredon_core::group::{FiniteGroup, Subgroup, SubgroupClassTable};
use bredon_core::linalg::{q, GroupAction, RationalMatrix};
use bredon_core::Error;

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(data::group(name).unwrap())
}

fn space(name: &str) -> GCWComplex {
    GCWComplex::builtin(name, None).unwrap()
}

fn sub_cat(g: &Arc<FiniteGroup>) -> (Arc<SubgroupClassTable>, Arc<EICategory>) {
    let t = Arc::new(SubgroupClassTable::new(Arc::clone(g), 64).unwrap());
    let s = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
    (t, s)
}

fn betti(c: &bredon_core::gcw::EvaluatedChainComplex) -> Vec<usize> {
    (0..=c.top()).map(|p| c.homology(p).unwrap().dim()).collect()
}

#[test]
fn point_and_orbits() {
    let g = group("S3");
    let (t, cat) = sub_cat(&g);
    let pt = GCWComplex::point(Arc::clone(&g));
    pt.validate().unwrap();
    for c in 0..t.num_classes() {
        assert_eq!(betti(&pt.fixed_point_chain(&t.rep(c))), vec![1]);
        let qc = pt.quotient_chain(&cat, c).unwrap();
        assert_eq!(qc.dims(), vec![1]);
        assert_eq!(qc.homology(0).unwrap().action.invariant_dim(), 1);
    }
    let c3 = Subgroup::from_elements(&g, &[0, 3, 4]).unwrap();
    let orbit = GCWComplex::builtin("orbit:{0,3,4}", Some(Arc::clone(&g))).unwrap();
    assert_eq!(orbit.fixed_point_chain(&Subgroup::trivial()).dims(), vec![2]);
    assert_eq!(orbit.fixed_point_chain(&c3).dims(), vec![2]);
    assert_eq!(orbit.fixed_point_chain(&Subgroup::whole(&g)).dims(), vec![0]);
    // a single Sub-morphism from the trivial subgroup: G\(G/K) is a point
    assert_eq!(orbit.quotient_chain(&cat, 0).unwrap().dims(), vec![1]);
}

#[test]
fn reflection_circle_evaluations() {
    let x = space("reflection_circle");
    let (t, cat) = sub_cat(x.group());
    let one = x.fixed_point_chain(&t.rep(0));
    assert_eq!(one.dims(), vec![2, 2]);
    assert_eq!(one.boundary(1).rank(), 1);
    assert_eq!(betti(&one), vec![1, 1]);
    let fixed = x.fixed_point_chain(&t.rep(1));
    assert_eq!(fixed.dims(), vec![2, 0]);
    assert_eq!(betti(&fixed), vec![2, 0]);

    let arc = x.quotient_chain(&cat, 0).unwrap();
    assert_eq!(arc.dims(), vec![2, 1]);
    assert_eq!(arc.boundary(1), RationalMatrix::from_int_rows(&[&[1], &[-1]], 1));
    assert_eq!(betti(&arc), vec![1, 0]);
    let top = x.quotient_chain(&cat, 1).unwrap();
    assert_eq!(top.dims(), vec![2, 0]);
    let h0 = top.homology(0).unwrap();
    assert_eq!((h0.dim(), h0.action.invariant_dim()), (2, 2));
}

#[test]
fn triangle_boundary_evaluations() {
    let x = space("s3_triangle");
    let (_, cat) = sub_cat(x.group());
    let hexagon = x.fixed_point_chain(&Subgroup::trivial());
    assert_eq!(hexagon.dims(), vec![6, 6]);
    assert_eq!(betti(&hexagon), vec![1, 1]);
    assert_eq!(betti(&x.quotient_chain(&cat, 0).unwrap()), vec![1, 0]);
}

#[test]
fn free_circle_quotient_is_a_circle() {
    let x = space("free_circle_z4");
    let (_, cat) = sub_cat(x.group());
    let q0 = x.quotient_chain(&cat, 0).unwrap();
    assert_eq!(q0.dims(), vec![1, 1]);
    assert_eq!(betti(&q0), vec![1, 1]);
    assert_eq!(betti(&x.fixed_point_chain(&Subgroup::trivial())), vec![1, 1]);
}

#[test]
fn bundled_spaces_validate_everywhere() {
    for (name, _) in data::SPACES {
        let x = space(name);
        let (t, cat) = sub_cat(x.group());
        assert!(x.euler_check(&t).passed(), "{name}");
        for h in t.subgroups() {
            x.fixed_point_chain(h).validate().unwrap();
        }
        for c in 0..t.num_classes() {
            x.quotient_chain(&cat, c).unwrap().validate().unwrap();
        }
        let back = GCWComplex::parse(&x.to_text(), Arc::clone(x.group())).unwrap();
        assert_eq!(back.to_text(), x.to_text());
    }
}

#[test]
fn evaluation_dimensions_match_morphism_counts() {
    for (name, _) in data::SPACES {
        let x = space(name);
        let (t, sub) = sub_cat(x.group());
        let or = EICategory::or(Arc::clone(&t)).unwrap();
        for c in 0..t.num_classes() {
            let fixed = x.fixed_point_chain(&t.rep(c)).dims();
            let quot = x.quotient_chain(&sub, c).unwrap().dims();
            for n in 0..=x.dim() {
                let cls: Vec<usize> = x.cells(n).iter().map(|cell| t.class_of(&cell.isotropy).unwrap()).collect();
                assert_eq!(fixed[n], cls.iter().map(|&ci| or.mor_count(c, ci)).sum::<usize>(), "{name}");
                assert_eq!(quot[n], cls.iter().map(|&ci| sub.mor_count(c, ci)).sum::<usize>(), "{name}");
            }
        }
        // at the trivial subgroup the cells of X are counted with orbit sizes
        let chi: i64 = (0..=x.dim())
            .map(|n| {
                let s = if n % 2 == 0 { 1 } else { -1 };
                s * x.cells(n).iter().map(|c| (x.group().order() / c.isotropy.order()) as i64).sum::<i64>()
            })
            .sum();
        assert_eq!(x.fixed_point_chain(&Subgroup::trivial()).euler_characteristic(), chi);
    }
}

/// Independent model of `X^H`: cosets `xH_i` fixed by `H`, as sorted element sets, with
/// `C_G(H)` acting by left multiplication. Returns the homology of the invariant subcomplex.
fn invariant_fixed_homology(x: &GCWComplex, h: &Subgroup) -> Vec<usize> {
    let g = x.group();
    let cent: Vec<usize> = h.centralizer(g).elements();
    let coset = |a: usize, k: &Subgroup| {
        let mut v: Vec<usize> = k.iter().map(|y| g.mul(a, y)).collect();
        v.sort_unstable();
        v
    };
    let mut cells: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    for n in 0..=x.dim() {
        let mut list = Vec::new();
        for (i, c) in x.cells(n).iter().enumerate() {
            let mut seen = Vec::new();
            for a in 0..g.order() {
                let s = coset(a, &c.isotropy);
                if seen.contains(&s) {
                    continue;
                }
                seen.push(s.clone());
                if h.iter().all(|y| coset(g.mul(y, a), &c.isotropy) == s) {
                    list.push((i, s));
                }
            }
        }
        cells.push(list);
    }
    let find = |n: usize, i: usize, s: &[usize]| cells[n].iter().position(|(j, t)| *j == i && t == s).unwrap();
    let mut d = vec![RationalMatrix::zeros(0, cells[0].len())];
    for n in 1..=x.dim() {
        let mut m = RationalMatrix::zeros(cells[n - 1].len(), cells[n].len());
        for (col, (i, s)) in cells[n].iter().enumerate() {
            for t in x.boundary(n, *i) {
                let target = coset(g.mul(s[0], t.element), &x.cells(n - 1)[t.target].isotropy);
                *m.entry_mut(find(n - 1, t.target, &target), col) += q(t.coeff);
            }
        }
        d.push(m);
    }
    let proj: Vec<RationalMatrix> = (0..=x.dim())
        .map(|n| {
            let mut p = RationalMatrix::zeros(cells[n].len(), cells[n].len());
            for &c in &cent {
                for (col, (i, s)) in cells[n].iter().enumerate() {
                    let moved = coset(g.mul(c, s[0]), &x.cells(n)[*i].isotropy);
                    *p.entry_mut(find(n, *i, &moved), col) += q(1);
                }
            }
            p.image_basis()
        })
        .collect();
    let restricted: Vec<RationalMatrix> = (0..=x.dim())
        .map(|n| {
            if n == 0 || proj[n].cols() == 0 || proj[n - 1].cols() == 0 {
                return RationalMatrix::zeros(proj[n.saturating_sub(1)].cols() * (n > 0) as usize, proj[n].cols());
            }
            proj[n - 1].solve_matrix(&(&d[n] * &proj[n])).unwrap()
        })
        .collect();
    (0..=x.dim())
        .map(|n| {
            let z = proj[n].cols() as i64 - restricted[n].rank() as i64;
            let b = if n < x.dim() { restricted[n + 1].rank() as i64 } else { 0 };
            (z - b) as usize
        })
        .collect()
}

#[test]
fn quotient_homology_is_centralizer_invariant_homology() {
    for (name, _) in data::SPACES {
        let x = space(name);
        let (t, cat) = sub_cat(x.group());
        for c in 0..t.num_classes() {
            let expect = invariant_fixed_homology(&x, &t.rep(c));
            assert_eq!(betti(&x.quotient_chain(&cat, c).unwrap()), expect, "{name} at {}", t.rep(c));
        }
    }
}

#[test]
fn weyl_action_on_s3_disk_homology() {
    let x = space("s3_disk");
    let (t, cat) = sub_cat(x.group());
    for c in 0..t.num_classes() {
        let chain = x.quotient_chain(&cat, c).unwrap();
        let h0 = chain.homology(0).unwrap();
        assert_eq!(h0.dim(), 1);
        assert!(h0.action.matrices().iter().all(RationalMatrix::is_identity));
        assert_eq!(chain.homology(1).unwrap().dim(), 0);
    }
    let trivial: GroupAction = x.quotient_chain(&cat, 0).unwrap().homology(2).unwrap().action;
    assert_eq!(trivial.dim(), 0);
}

#[test]
fn invalid_morphism_is_named() {
    let g = group("S3");
    let err = GCWComplex::parse(data::invalid_text("bad_morphism.gcw").unwrap(), g).unwrap_err();
    let msg = err.to_string();
    assert!(matches!(err, Error::Complex(_)));
    assert!(msg.contains("boundary of f") && msg.contains("(m, 0)") && msg.contains("{0,1}"), "{msg}");
}

#[test]
fn nonzero_dd_is_named_with_residual() {
    let g = group("S3");
    let text = data::invalid_text("d2_nonzero.gcw").unwrap();
    let err = GCWComplex::parse(text, Arc::clone(&g)).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("on t") && msg.contains("1*(m, 0)") && msg.contains("-1*(c, 0)"), "{msg}");

    // evaluated anyway, ∂∂ ≠ 0 and the Euler characteristics disagree
    let x = GCWComplex::parse_unchecked(text, g).unwrap();
    let chain = x.fixed_point_chain(&Subgroup::trivial());
    assert!(chain.validate().is_err());
    let t = SubgroupClassTable::new(Arc::clone(x.group()), 64).unwrap();
    let report = x.euler_check(&t);
    let (h, a, b) = report.first_failure().expect("euler check must fail");
    assert_eq!(*h, Subgroup::trivial());
    assert_ne!(a, b);
}

#[test]
fn syntax_errors_carry_positions() {
    let g = group("Z2");
    let bad = "gcw x\ngroup Z2\ndim 1\ncells 0: a iso={0,1}\ncells 1: e iso={0}\nboundary e = 1/2*(a, 0)\n";
    let err = GCWComplex::parse(bad, Arc::clone(&g)).unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 6, column: 15, .. }), "{err}");
    let bad = "gcw x\ngroup Z2\ndim 0\ncells 0: a iso={0,3}\n";
    let err = GCWComplex::parse(bad, Arc::clone(&g)).unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 4, column: 16, .. }), "{err}");
    let bad = "gcw x\ngroup Z2\ndim 1\ncells 0: a iso={0,1}\ncells 1: e iso={0}\nboundary e = 1*(z, 0)\n";
    assert!(matches!(GCWComplex::parse(bad, g).unwrap_err(), Error::Syntax { line: 6, .. }));
}
