//! Generators of the toric ideal of the leading monomials: the binomials
//! `z^u - z^v` with `u` and `v` of equal degree in every block and equal
//! exponent sums.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_traits::ToPrimitive;

use crate::intlin::{integer_kernel, IntMatrix};

/// `z^u - z^v` over the flattened generator list, oriented so `u > v`
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomialRelation {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Binomial {
    lead: Vec<u32>,
    tail: Vec<u32>,
}

/// Degree reverse lexicographic order in which `last` is the cheapest
/// variable.
struct Grevlex {
    last: usize,
}

impl Grevlex {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u64 = a.iter().map(|&x| x as u64).sum();
        let db: u64 = b.iter().map(|&x| x as u64).sum();
        if da != db {
            return da.cmp(&db);
        }
        let rev = std::iter::once(self.last).chain((0..a.len()).rev().filter(|&i| i != self.last));
        for i in rev {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    fn orient(&self, a: Vec<u32>, b: Vec<u32>) -> Option<Binomial> {
        match self.cmp(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Binomial { lead: a, tail: b }),
            Ordering::Less => Some(Binomial { lead: b, tail: a }),
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

/// Normal form of a monomial: rewrite with `lead -> tail` until no leading
/// monomial divides it.
fn normal_form(mut m: Vec<u32>, basis: &[Binomial]) -> Vec<u32> {
    'outer: loop {
        for g in basis {
            if divides(&g.lead, &m) {
                for i in 0..m.len() {
                    m[i] = m[i] - g.lead[i] + g.tail[i];
                }
                continue 'outer;
            }
        }
        return m;
    }
}

/// Reduced Groebner basis of a pure difference binomial ideal.
fn groebner(gens: Vec<Binomial>, order: &Grevlex) -> Vec<Binomial> {
    let mut basis: Vec<Binomial> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let add = |b: Binomial, basis: &mut Vec<Binomial>, pairs: &mut BinaryHeap<_>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let l = lcm(&g.lead, &b.lead);
            pairs.push(Reverse((degree(&l), i, k)));
        }
        basis.push(b);
    };
    for g in gens {
        let a = normal_form(g.lead, &basis);
        let b = normal_form(g.tail, &basis);
        if let Some(bin) = order.orient(a, b) {
            add(bin, &mut basis, &mut pairs);
        }
    }
    while let Some(Reverse((_, i, j))) = pairs.pop() {
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.lead.iter().zip(&gj.lead).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(&gi.lead, &gj.lead);
        let si: Vec<u32> = (0..l.len()).map(|k| l[k] - gi.lead[k] + gi.tail[k]).collect();
        let sj: Vec<u32> = (0..l.len()).map(|k| l[k] - gj.lead[k] + gj.tail[k]).collect();
        let a = normal_form(si, &basis);
        let b = normal_form(sj, &basis);
        if let Some(bin) = order.orient(a, b) {
            add(bin, &mut basis, &mut pairs);
        }
    }
    interreduce(basis, order)
}

fn interreduce(mut basis: Vec<Binomial>, order: &Grevlex) -> Vec<Binomial> {
    basis.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Binomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h.lead, &g.lead)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Binomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let tail = normal_form(minimal[i].tail.clone(), &others);
        reduced.push(Binomial { lead: minimal[i].lead.clone(), tail });
    }
    reduced
}

/// Greedy pairwise size reduction of a lattice basis, to keep the starting
/// binomials of low degree.
fn size_reduce(mut basis: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let norm = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand: Vec<i64> =
                        basis[i].iter().zip(&basis[j]).map(|(a, b)| a + sign * b).collect();
                    if norm(&cand) < norm(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
    basis
}

/// Generators of the toric ideal of the block-graded leading monomials.
///
/// `leaders[r][j]` is the leading exponent of generator `j` of block `r`.
/// Relations are expressed over the flattened generator list.
pub fn toric_relations(leaders: &[Vec<Vec<u32>>]) -> Vec<BinomialRelation> {
    let m = leaders.len();
    let n = leaders.iter().flatten().next().map_or(0, |a| a.len());
    let columns: Vec<Vec<i64>> = leaders
        .iter()
        .enumerate()
        .flat_map(|(r, block)| {
            block.iter().map(move |a| {
                let mut c = vec![0i64; m];
                c[r] = 1;
                c.extend(a.iter().map(|&e| e as i64));
                c
            })
        })
        .collect();
    let k = columns.len();
    if k == 0 {
        return Vec::new();
    }
    let matrix = IntMatrix::from_columns(&columns, m + n);
    let kernel: Vec<Vec<i64>> = integer_kernel(&matrix)
        .into_iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("kernel entry fits in i64")).collect())
        .collect();
    if kernel.is_empty() {
        return Vec::new();
    }
    let kernel = size_reduce(kernel);
    let split = |v: &[i64]| -> (Vec<u32>, Vec<u32>) {
        let pos = v.iter().map(|&x| x.max(0) as u32).collect();
        let neg = v.iter().map(|&x| (-x).max(0) as u32).collect();
        (pos, neg)
    };
    let mut current: Vec<(Vec<u32>, Vec<u32>)> = kernel.iter().map(|v| split(v)).collect();
    for var in 0..k {
        let order = Grevlex { last: var };
        let gens: Vec<Binomial> =
            current.iter().filter_map(|(a, b)| order.orient(a.clone(), b.clone())).collect();
        let gb = groebner(gens, &order);
        current = gb
            .into_iter()
            .map(|mut g| {
                let p = g.lead[var].min(g.tail[var]);
                g.lead[var] -= p;
                g.tail[var] -= p;
                (g.lead, g.tail)
            })
            .filter(|(a, b)| a != b)
            .collect();
    }
    let mut out: Vec<BinomialRelation> = current
        .into_iter()
        .map(|(a, b)| if a > b { BinomialRelation { u: a, v: b } } else { BinomialRelation { u: b, v: a } })
        .collect();
    out.sort();
    out.dedup();
    out
}
