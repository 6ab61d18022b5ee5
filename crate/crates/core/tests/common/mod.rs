#![allow(dead_code)]

use jordan_core::{Atom, Generator, MapSym, Monomial, NCPoly, ScalarPoly};
use proptest::prelude::*;

pub fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::x()), Just(Generator::y())]
}

pub fn map_sym() -> impl Strategy<Value = MapSym> {
    prop_oneof![Just(MapSym::T), Just(MapSym::T0), Just(MapSym::D), Just(MapSym::F)]
}

pub fn word(max: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(generator().prop_map(Atom::Gen), 1..=max).prop_map(Monomial::new)
}

pub fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        2 => generator().prop_map(Atom::Gen),
        1 => (map_sym(), word(3)).prop_map(|(f, w)| Atom::App(f, w)),
    ]
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(atom(), 1..=4).prop_map(Monomial::new)
}

pub fn scalar() -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0u32..=2), 1..=2).prop_map(|ts| {
        ts.into_iter()
            .fold(ScalarPoly::zero(), |acc, (c, i, j)| acc + ScalarPoly::term(c, i, j))
    })
}

pub fn nonzero_scalar() -> impl Strategy<Value = ScalarPoly> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

pub fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((scalar(), monomial()), 0..=4).prop_map(|ts| {
        let mut p = NCPoly::zero();
        for (c, m) in ts {
            p.add_term(m, c);
        }
        p
    })
}

/// Polynomials in the generators only, safe to substitute anywhere.
pub fn word_poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((scalar(), word(3)), 1..=3).prop_map(|ts| {
        let mut p = NCPoly::zero();
        for (c, m) in ts {
            p.add_term(m, c);
        }
        p
    })
}
