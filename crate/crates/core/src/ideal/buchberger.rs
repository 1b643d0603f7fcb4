//! Buchberger's algorithm over Q with the Gebauer–Möller installation of
//! both criteria. Pairs are selected by the normal strategy under grevlex
//! and by sugar under lex.
//!
//! Exponent vectors are already permuted into priority order. Terms are
//! kept in ascending order under the active monomial order, so the leading
//! term is the last one.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub(crate) type Mono = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Order {
    Lex,
    /// Graded reverse lex.
    Grevlex,
}

impl Order {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Order::Lex => a.cmp(b),
            Order::Grevlex => deg(a).cmp(&deg(b)).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Pol {
    pub terms: Vec<(Mono, Rational)>,
    pub sugar: u32,
}

pub(crate) fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Pol {
    pub fn new(mut terms: Vec<(Mono, Rational)>, ord: Order) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        let sugar = terms.iter().map(|(m, _)| deg(m)).max().unwrap_or(0);
        Pol { terms, sugar }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Mono {
        &self.terms.last().expect("leading term of zero polynomial").0
    }

    fn lead_coeff(&self) -> &Rational {
        &self.terms.last().expect("leading term of zero polynomial").1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.lead().iter().all(|&e| e == 0)
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let lc = self.lead_coeff().clone();
        if lc.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c = &*c / &lc;
        }
    }

    /// `self - c * x^shift * g`, merging the two ascending term lists.
    fn sub_scaled(&self, c: &Rational, shift: &[u32], g: &Pol, ord: Order) -> Pol {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut shifted = g
            .terms
            .iter()
            .map(|(m, gc)| (m.iter().zip(shift).map(|(a, b)| a + b).collect::<Mono>(), gc))
            .peekable();
        loop {
            let o = match (self.terms.get(i), shifted.peek()) {
                (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match o {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, gc) = shifted.next().unwrap();
                    out.push((m, -(c * gc)));
                }
                Ordering::Equal => {
                    let (m, gc) = shifted.next().unwrap();
                    let v = &self.terms[i].1 - c * gc;
                    if !v.is_zero() {
                        out.push((m, v));
                    }
                    i += 1;
                }
            }
        }
        let sugar = self.sugar.max(g.sugar + deg(shift));
        Pol { terms: out, sugar }
    }
}

/// Full reduction of `p` modulo `basis`.
pub(crate) fn reduce(p: &Pol, basis: &[&Pol], ord: Order) -> Pol {
    let mut work = p.clone();
    let mut rem: Vec<(Mono, Rational)> = Vec::new();
    while let Some((m, c)) = work.terms.last() {
        match basis.iter().find(|g| divides(g.lead(), m)) {
            Some(g) => {
                let shift = quotient(m, g.lead());
                let c = c / g.lead_coeff();
                work = work.sub_scaled(&c, &shift, g, ord);
            }
            None => rem.push(work.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Pol { terms: rem, sugar: work.sugar }
}

fn spoly(f: &Pol, g: &Pol, ord: Order) -> Pol {
    let l = lcm(f.lead(), g.lead());
    let sf = quotient(&l, f.lead());
    let sg = quotient(&l, g.lead());
    let ff = Pol {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(&sf).map(|(a, b)| a + b).collect(), c / f.lead_coeff()))
            .collect(),
        sugar: f.sugar + deg(&sf),
    };
    ff.sub_scaled(&(Rational::one() / g.lead_coeff()), &sg, g, ord)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub pairs_discarded: usize,
    pub zero_reductions: usize,
}

impl GroebnerStats {
    pub(crate) fn absorb(&mut self, other: GroebnerStats) {
        self.pairs_reduced += other.pairs_reduced;
        self.pairs_discarded += other.pairs_discarded;
        self.zero_reductions += other.zero_reductions;
    }
}

pub(crate) enum Outcome {
    Basis(Vec<Pol>, GroebnerStats),
    Budget,
}

struct Engine {
    ord: Order,
    polys: Vec<Pol>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl Engine {
    fn pair_sugar(&self, i: usize, j: usize, l: &[u32]) -> u32 {
        let a = &self.polys[i];
        let b = &self.polys[j];
        (a.sugar + deg(l) - deg(a.lead())).max(b.sugar + deg(l) - deg(b.lead()))
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn install(&mut self, h: usize) {
        let lh = self.polys[h].lead().clone();
        let mut candidates: Vec<(usize, Mono)> =
            self.active.iter().map(|&g| (g, lcm(&lh, self.polys[g].lead()))).collect();
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        while let Some((g, l)) = candidates.pop() {
            let cop = coprime(&lh, self.polys[g].lead());
            let dominated = candidates.iter().any(|(_, l2)| divides(l2, &l)) || kept.iter().any(|(_, l2)| divides(l2, &l));
            if cop || !dominated {
                kept.push((g, l));
            } else {
                self.stats.pairs_discarded += 1;
            }
        }
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm(polys[p.i].lead(), &lh) != p.lcm
                && lcm(polys[p.j].lead(), &lh) != p.lcm)
        });
        self.stats.pairs_discarded += before - self.pairs.len();
        for (g, l) in kept {
            if coprime(&lh, self.polys[g].lead()) {
                self.stats.pairs_discarded += 1;
                continue;
            }
            let sugar = self.pair_sugar(g, h, &l);
            self.pairs.push(Pair { i: g, j: h, lcm: l, sugar });
        }
        let polys = &self.polys;
        self.active.retain(|&g| !divides(&lh, polys[g].lead()));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let pa = &self.pairs[a];
            let pb = &self.pairs[b];
            match ord {
                Order::Grevlex => ord.cmp(&pa.lcm, &pb.lcm),
                Order::Lex => pa.sugar.cmp(&pb.sugar).then_with(|| ord.cmp(&pa.lcm, &pb.lcm)),
            }
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn active_refs(&self) -> Vec<&Pol> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    fn add(&mut self, mut p: Pol) -> bool {
        p.make_monic();
        let constant = p.is_constant();
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.install(h);
        if !constant {
            self.tail_reduce_by(h);
        }
        constant
    }

    /// Rewrites the tails of the other active elements that `h` can reduce.
    /// Leading terms are untouched, so queued pairs stay valid.
    fn tail_reduce_by(&mut self, h: usize) {
        let lh = self.polys[h].lead().clone();
        for k in 0..self.active.len() {
            let g = self.active[k];
            if g == h {
                continue;
            }
            let tail = &self.polys[g].terms[..self.polys[g].terms.len() - 1];
            if !tail.iter().any(|(m, _)| divides(&lh, m)) {
                continue;
            }
            let others: Vec<&Pol> = self.active.iter().filter(|&&i| i != g).map(|&i| &self.polys[i]).collect();
            let r = reduce(&self.polys[g], &others, self.ord);
            self.polys[g].terms = r.terms;
        }
    }
}

/// Computes a reduced Gröbner basis under `ord`, sorted by descending
/// leading monomial. The budget bounds the number of S-pairs reduced.
pub(crate) fn buchberger(input: Vec<Pol>, budget: usize, ord: Order) -> Outcome {
    let mut eng =
        Engine { ord, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), stats: GroebnerStats::default() };
    let mut input: Vec<Pol> = input.into_iter().filter(|p| !p.is_zero()).collect();
    let Some(nvars) = input.first().map(|p| p.lead().len()) else {
        return Outcome::Basis(vec![], eng.stats);
    };
    input.sort_by(|a, b| ord.cmp(a.lead(), b.lead()));
    for p in input {
        let r = reduce(&p, &eng.active_refs(), ord);
        if r.is_zero() {
            continue;
        }
        if eng.add(r) {
            return Outcome::Basis(vec![unit(nvars)], eng.stats);
        }
    }
    while let Some(pair) = eng.next_pair() {
        if eng.stats.pairs_reduced >= budget {
            return Outcome::Budget;
        }
        eng.stats.pairs_reduced += 1;
        let mut s = spoly(&eng.polys[pair.i], &eng.polys[pair.j], ord);
        s.sugar = s.sugar.max(pair.sugar);
        let r = reduce(&s, &eng.active_refs(), ord);
        if r.is_zero() {
            eng.stats.zero_reductions += 1;
            continue;
        }
        if eng.add(r) {
            return Outcome::Basis(vec![unit(nvars)], eng.stats);
        }
    }
    let minimal: Vec<Pol> = eng.active.iter().map(|&i| eng.polys[i].clone()).collect();
    Outcome::Basis(interreduce(minimal, ord), eng.stats)
}

/// Tail-reduces a minimal basis and sorts it by descending leading monomial.
fn interreduce(mut minimal: Vec<Pol>, ord: Order) -> Vec<Pol> {
    minimal.sort_by(|a, b| ord.cmp(a.lead(), b.lead()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Pol> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let mut r = reduce(&minimal[k], &others, ord);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| ord.cmp(b.lead(), a.lead()));
    reduced
}

pub(crate) fn unit(nvars: usize) -> Pol {
    Pol { terms: vec![(vec![0; nvars], Rational::one())], sugar: 0 }
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
pub(crate) fn satisfies_buchberger_criterion(basis: &[Pol], ord: Order) -> bool {
    let refs: Vec<&Pol> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(&spoly(&basis[i], &basis[j], ord), &refs, ord).is_zero() {
                return false;
            }
        }
    }
    true
}
