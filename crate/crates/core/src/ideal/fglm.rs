//! FGLM change of order: from a reduced grevlex basis of a zero-dimensional
//! ideal to its reduced lex basis, by linear algebra on normal forms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::poly::Rational;

use super::buchberger::{divides, reduce, Mono, Order, Pol};

type SparseVec = BTreeMap<usize, Rational>;

struct Row {
    /// Column whose entry is 1 here and 0 in every later row.
    pivot: usize,
    coords: SparseVec,
    /// Expresses the row as a combination of staircase normal forms.
    comb: SparseVec,
}

fn axpy(dst: &mut SparseVec, a: &Rational, src: &SparseVec) {
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(Rational::zero);
        *e -= a * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Whether every variable has a pure power among the leading monomials.
pub(crate) fn is_zero_dimensional(basis: &[Pol], nvars: usize) -> bool {
    (0..nvars).all(|i| {
        basis.iter().any(|p| {
            let m = p.lead();
            m[i] > 0 && m.iter().enumerate().all(|(j, e)| j == i || *e == 0)
        })
    })
}

pub(crate) fn fglm(grevlex: &[Pol], nvars: usize) -> Vec<Pol> {
    let refs: Vec<&Pol> = grevlex.iter().collect();
    let mut columns: HashMap<Mono, usize> = HashMap::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut staircase: Vec<Mono> = Vec::new();
    let mut lex: Vec<Pol> = Vec::new();
    let mut seen: BTreeSet<Mono> = BTreeSet::new();
    let mut queue: BTreeSet<Mono> = BTreeSet::new();
    queue.insert(vec![0; nvars]);

    while let Some(m) = queue.pop_first() {
        if !seen.insert(m.clone()) || lex.iter().any(|g| divides(g.lead(), &m)) {
            continue;
        }
        let nf = reduce(&Pol { terms: vec![(m.clone(), Rational::one())], sugar: 0 }, &refs, Order::Grevlex);
        let mut v = SparseVec::new();
        for (mono, c) in nf.terms {
            let n = columns.len();
            let col = *columns.entry(mono).or_insert(n);
            v.insert(col, c);
        }
        let new_index = staircase.len();
        let mut comb = SparseVec::new();
        comb.insert(new_index, Rational::one());
        for row in &rows {
            if let Some(a) = v.get(&row.pivot).cloned() {
                axpy(&mut v, &a, &row.coords);
                axpy(&mut comb, &a, &row.comb);
            }
        }
        if v.is_empty() {
            let mut terms = vec![(m, Rational::one())];
            for (k, c) in comb {
                if k != new_index {
                    terms.push((staircase[k].clone(), c));
                }
            }
            lex.push(Pol::new(terms, Order::Lex));
        } else {
            let pivot = *v.keys().next().unwrap();
            let inv = Rational::one() / &v[&pivot];
            v.values_mut().for_each(|c| *c *= &inv);
            comb.values_mut().for_each(|c| *c *= &inv);
            rows.push(Row { pivot, coords: v, comb });
            for i in 0..nvars {
                let mut next = m.clone();
                next[i] += 1;
                queue.insert(next);
            }
            staircase.push(m);
        }
    }
    lex.sort_by(|a, b| b.lead().cmp(a.lead()));
    lex
}
