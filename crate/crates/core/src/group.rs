//! Words in the generators of the affine symmetry group and their matrices.
//!
//! The group of derivatives of affine automorphisms of `S_c` is generated by
//! the involutions
//!
//! ```text
//! A = [[-1, 0], [0, 1]]   B = [[-1, 2], [0, 1]]   C_c = [[-c, c-1], [-c-1, c]]
//! ```
//!
//! together with `-I`. The parabolics `D = BA = [[1,2],[0,1]]` and
//! `E_c = (-I) C B = [[-c, c+1], [-c-1, c+2]]` fix the horizontal and the
//! slope-one direction. Words are written over `{A, B, C, D, E, -}`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{wedge, RatMat2, RatVec2};
use crate::rational::Rational;
use crate::surface::{cylinders, CylinderDirection, SurfaceHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
    C,
    NegI,
    D,
    E,
}

impl Symbol {
    pub fn to_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::C => 'C',
            Symbol::NegI => '-',
            Symbol::D => 'D',
            Symbol::E => 'E',
        }
    }

    /// Expansion over the involutive alphabet `{A, B, C, -I}`.
    pub fn expand(self) -> &'static [Symbol] {
        match self {
            Symbol::A => &[Symbol::A],
            Symbol::B => &[Symbol::B],
            Symbol::C => &[Symbol::C],
            Symbol::NegI => &[Symbol::NegI],
            Symbol::D => &[Symbol::B, Symbol::A],
            Symbol::E => &[Symbol::NegI, Symbol::C, Symbol::B],
        }
    }
}

/// Generator matrices at a fixed parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub a: RatMat2,
    pub b: RatMat2,
    pub c: RatMat2,
}

impl Generators {
    pub fn at(c: &Rational) -> Self {
        let one = Rational::one();
        Generators {
            a: RatMat2::from_ints(-1, 0, 0, 1),
            b: RatMat2::from_ints(-1, 2, 0, 1),
            c: RatMat2::new(-c, c - &one, -(c + &one), c.clone()),
        }
    }

    pub fn matrix(&self, s: Symbol) -> RatMat2 {
        match s {
            Symbol::A => self.a.clone(),
            Symbol::B => self.b.clone(),
            Symbol::C => self.c.clone(),
            Symbol::NegI => RatMat2::neg_identity(),
            Symbol::D => &self.b * &self.a,
            Symbol::E => &(&RatMat2::neg_identity() * &self.c) * &self.b,
        }
    }
}

/// Closed form of `D_c`.
pub fn parabolic_d() -> RatMat2 {
    RatMat2::from_ints(1, 2, 0, 1)
}

/// Closed form of `E_c`.
pub fn parabolic_e(c: &Rational) -> RatMat2 {
    let one = Rational::one();
    let two = Rational::from_int(2);
    RatMat2::new(-c, c + &one, -(c + &one), c + &two)
}

/// A word over `{A, B, C, D, E, -I}`, read left to right as a matrix product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    symbols: Vec<Symbol>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        GroupWord { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// The word over `{A, B, C, -I}`.
    pub fn letters(&self) -> Vec<Symbol> {
        self.symbols.iter().flat_map(|s| s.expand().iter().copied()).collect()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        GroupWord { symbols }
    }

    /// Every letter is an involution, so the inverse is the reversed letter word.
    pub fn inverse(&self) -> GroupWord {
        let mut letters = self.letters();
        letters.reverse();
        GroupWord { symbols: letters }
    }

    /// Cancels adjacent equal letters and collects `-I` (central) in front.
    pub fn free_reduce(&self) -> GroupWord {
        let mut negs = 0usize;
        let mut stack: Vec<Symbol> = Vec::new();
        for l in self.letters() {
            if l == Symbol::NegI {
                negs += 1;
            } else if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        if negs % 2 == 1 {
            stack.insert(0, Symbol::NegI);
        }
        GroupWord { symbols: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.free_reduce().letters() == self.letters()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|ch| match ch {
                'A' => Ok(Symbol::A),
                'B' => Ok(Symbol::B),
                'C' => Ok(Symbol::C),
                'D' => Ok(Symbol::D),
                'E' => Ok(Symbol::E),
                '-' => Ok(Symbol::NegI),
                _ => Err(Error::ParseWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord { symbols })
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A word together with its matrix at parameter `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcreteMatrix {
    pub word: GroupWord,
    pub c: Rational,
    pub matrix: RatMat2,
}

pub fn realize(word: &GroupWord, c: &Rational) -> Result<ConcreteMatrix> {
    if c < &Rational::one() {
        return Err(Error::ParameterBelowOne(c.clone()));
    }
    Ok(ConcreteMatrix { word: word.clone(), c: c.clone(), matrix: realize_with(word, &Generators::at(c)) })
}

/// Product of generator matrices taken from `gens`.
pub fn realize_with(word: &GroupWord, gens: &Generators) -> RatMat2 {
    word.symbols.iter().fold(RatMat2::identity(), |acc, s| &acc * &gens.matrix(*s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationResult {
    pub relation: &'static str,
    pub pass: bool,
}

/// Checks the defining relations on a generator triple.
pub fn verify_relations_with(gens: &Generators, c: &Rational) -> Vec<RelationResult> {
    let id = RatMat2::identity();
    let neg = RatMat2::neg_identity();
    let sq = |m: &RatMat2| m * m;
    let cases = [
        ("A^2 = I", sq(&gens.a) == id),
        ("B^2 = I", sq(&gens.b) == id),
        ("C^2 = I", sq(&gens.c) == id),
        ("(-I)^2 = I", sq(&neg) == id),
        ("D = BA", &gens.b * &gens.a == parabolic_d()),
        ("E = (-I)CB", &(&neg * &gens.c) * &gens.b == parabolic_e(c)),
    ];
    cases.into_iter().map(|(relation, pass)| RelationResult { relation, pass }).collect()
}

pub fn verify_relations(c: &Rational) -> Result<Vec<RelationResult>> {
    if c < &Rational::one() {
        return Err(Error::ParameterBelowOne(c.clone()));
    }
    Ok(verify_relations_with(&Generators::at(c), c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicCertificate {
    pub certified: bool,
    pub derivative: RatMat2,
    pub moduli: Vec<Rational>,
}

/// Shear by `m` along the cylinders in `direction`.
///
/// The derivative is `I + (m / |v|^2) v (v^perp)^T` with `v` the cylinder
/// direction and `v^perp` its counterclockwise normal; this is the
/// conjugate of `[[1, m], [0, 1]]` into the orthogonal frame `(v, v^perp)`
/// and is rational for `v = (1,0)` and `v = (1,1)`. The shear is a power of
/// a single right Dehn twist on every cylinder iff `m M_n` is an integer for
/// all moduli `M_n`.
pub fn verify_parabolic(
    h: &SurfaceHandle,
    direction: CylinderDirection,
    m: &Rational,
    window: usize,
) -> Result<ParabolicCertificate> {
    if m.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let v = direction.vector();
    let scale = m.checked_div(&v.norm_sq())?;
    let derivative = &RatMat2::identity() + &RatMat2::outer(&v, &v.perp()).scale(&scale);
    let moduli: Vec<Rational> =
        cylinders(h, direction, window.max(1))?.into_iter().map(|c| c.modulus).collect();
    let certified = moduli.iter().all(|mm| (m * mm).is_integer());
    Ok(ParabolicCertificate { certified, derivative, moduli })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DirectionClass {
    #[serde(rename = "horizontal-like")]
    HorizontalLike,
    #[serde(rename = "slope-one-like")]
    SlopeOneLike,
    #[serde(rename = "vertical-like")]
    VerticalLike,
}

impl DirectionClass {
    pub fn name(self) -> &'static str {
        match self {
            DirectionClass::HorizontalLike => "horizontal-like",
            DirectionClass::SlopeOneLike => "slope-one-like",
            DirectionClass::VerticalLike => "vertical-like",
        }
    }

    /// Whether `S_1` has saddle connections in directions of this class.
    pub fn has_saddle_connections(self) -> bool {
        self != DirectionClass::VerticalLike
    }

    pub fn base(self) -> (i64, i64) {
        match self {
            DirectionClass::HorizontalLike => (1, 0),
            DirectionClass::SlopeOneLike => (1, 1),
            DirectionClass::VerticalLike => (0, 1),
        }
    }
}

/// Divides by the gcd and makes the first nonzero coordinate positive.
pub fn primitive(p: i64, q: i64) -> Result<(i64, i64)> {
    if p == 0 && q == 0 {
        return Err(Error::ZeroDirection);
    }
    let g = Rational::gcd_i64(p, q);
    let (mut a, mut b) = (p / g, q / g);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    Ok((a, b))
}

pub fn classify_direction(p: i64, q: i64) -> Result<DirectionClass> {
    let (a, b) = primitive(p, q)?;
    Ok(match (a.rem_euclid(2), b.rem_euclid(2)) {
        (1, 0) => DirectionClass::HorizontalLike,
        (1, 1) => DirectionClass::SlopeOneLike,
        _ => DirectionClass::VerticalLike,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub word: GroupWord,
    pub base: (i64, i64),
}

/// Moves available to the descent, as (matrix at c = 1, word of its inverse).
fn descent_moves() -> Vec<([i64; 4], GroupWord)> {
    let w = |s: &str| s.parse::<GroupWord>().expect("static word");
    vec![
        ([1, 2, 0, 1], w("AB")),    // D, inverse D^-1 = AB
        ([1, -2, 0, 1], w("D")),    // D^-1
        ([-1, 2, -2, 3], w("-BC")), // E_1, inverse (-I)BC
        ([3, -2, 2, -1], w("E")),   // E_1^-1
        ([1, 0, 2, 1], w("AC")),    // F = CA fixing the vertical
        ([1, 0, -2, 1], w("CA")),   // F^-1 = AC
    ]
}

/// Writes a primitive integer vector as `realize(word, 1) * base`.
///
/// Greedy descent on `|p| + |q|`: at each step the move giving the smallest
/// sum is applied (ties in the order D, E, F, positive exponent first) until
/// the vector is `(±1, 0)`, `(0, ±1)` or `(±1, ±1)`. A strictly decreasing
/// move exists whenever `0 < |q| != |p|` or `0 < |p| != |q|`, so the loop
/// terminates. The horizontal and vertical parabolics alone suffice for
/// this; the slope-one parabolic is kept as a candidate move.
pub fn reduce_direction(p: i64, q: i64) -> Result<Reduction> {
    if p == 0 && q == 0 {
        return Err(Error::ZeroDirection);
    }
    if Rational::gcd_i64(p, q) != 1 {
        return Err(Error::NotPrimitive(p, q));
    }
    let moves = descent_moves();
    let (mut x, mut y) = (p as i128, q as i128);
    let mut word = GroupWord::empty();
    while x.abs() != y.abs() && x != 0 && y != 0 {
        let size = x.abs() + y.abs();
        let mut best: Option<(i128, usize)> = None;
        for (i, (m, _)) in moves.iter().enumerate() {
            let nx = m[0] as i128 * x + m[1] as i128 * y;
            let ny = m[2] as i128 * x + m[3] as i128 * y;
            let s = nx.abs() + ny.abs();
            if s < size && best.is_none_or(|(b, _)| s < b) {
                best = Some((s, i));
            }
        }
        let (_, i) = best.ok_or_else(|| Error::Invalid(format!("descent stalled at ({x}, {y})")))?;
        let m = moves[i].0;
        let (nx, ny) = (m[0] as i128 * x + m[1] as i128 * y, m[2] as i128 * x + m[3] as i128 * y);
        x = nx;
        y = ny;
        // v = M_1^-1 ... M_k^-1 v_final
        word = word.concat(&moves[i].1);
    }
    let (base, tail) = match (x.signum(), y.signum()) {
        (1, 0) => ((1, 0), ""),
        (-1, 0) => ((1, 0), "-"),
        (0, 1) => ((0, 1), ""),
        (0, -1) => ((0, 1), "-"),
        (1, 1) => ((1, 1), ""),
        (-1, -1) => ((1, 1), "-"),
        (-1, 1) => ((1, 1), "A"),
        _ => ((1, 1), "-A"), // (1, -1)
    };
    word = word.concat(&tail.parse()?);
    Ok(Reduction { word, base })
}

/// `(realize(word, c) base, realize(word, 1) base)`.
pub fn phi_pair(word: &GroupWord, base: &RatVec2, c: &Rational) -> Result<(RatVec2, RatVec2)> {
    let uc = realize(word, c)?.matrix.apply(base);
    let u1 = realize(word, &Rational::one())?.matrix.apply(base);
    Ok((uc, u1))
}

pub fn automorphism_on_holonomy(word: &GroupWord, c: &Rational, v: &RatVec2) -> Result<RatVec2> {
    Ok(realize(word, c)?.matrix.apply(v))
}

/// All words of length `1..=max_len` over `alphabet`, optionally only the
/// freely reduced ones (no equal adjacent letters).
pub fn enumerate_words(alphabet: &[Symbol], max_len: usize, freely_reduced: bool) -> Vec<GroupWord> {
    let mut out = Vec::new();
    let mut frontier = vec![GroupWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in alphabet {
                if freely_reduced && w.symbols.last() == Some(s) {
                    continue;
                }
                let mut symbols = w.symbols.clone();
                symbols.push(*s);
                next.push(GroupWord { symbols });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Sign agreement of wedge products between two pairs from [`phi_pair`].
pub fn same_orientation(a: &(RatVec2, RatVec2), b: &(RatVec2, RatVec2)) -> bool {
    wedge(&a.0, &b.0).signum() == wedge(&a.1, &b.1).signum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn realize_examples() {
        let c = q(5, 4);
        assert_eq!(realize(&w("A"), &c).unwrap().matrix, RatMat2::from_ints(-1, 0, 0, 1));
        assert_eq!(realize(&w(""), &c).unwrap().matrix, RatMat2::identity());
        let e = realize(&w("-CB"), &c).unwrap().matrix;
        assert_eq!(e, RatMat2::new(q(-5, 4), q(9, 4), q(-9, 4), q(13, 4)));
        assert_eq!(e, parabolic_e(&c));
        assert_eq!(realize(&w("E"), &c).unwrap().matrix, e);
        assert_eq!(realize(&w("D"), &Rational::from_int(3)).unwrap().matrix, parabolic_d());
        assert!(realize(&w("A"), &q(1, 2)).is_err());
    }

    #[test]
    fn relations_hold_and_negative_control_fails() {
        for c in [Rational::one(), q(5, 4), Rational::from_int(2), q(7, 3)] {
            assert!(verify_relations(&c).unwrap().iter().all(|r| r.pass));
        }
        let c = q(5, 4);
        let mut gens = Generators::at(&c);
        gens.a.b = Rational::one();
        gens.a.c = Rational::one();
        let res = verify_relations_with(&gens, &c);
        assert!(!res.iter().find(|r| r.relation == "A^2 = I").unwrap().pass);
    }

    #[test]
    fn parabolic_examples() {
        let h1 = build_surface(Rational::one(), 0).unwrap();
        let cert = verify_parabolic(&h1, CylinderDirection::Horizontal, &Rational::from_int(2), 10).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.derivative, parabolic_d());
        let cert = verify_parabolic(&h1, CylinderDirection::Horizontal, &q(1, 3), 10).unwrap();
        assert!(!cert.certified);
        let c = q(5, 4);
        let h = build_surface(c.clone(), 0).unwrap();
        let cert = verify_parabolic(&h, CylinderDirection::SlopeOne, &q(9, 2), 10).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.derivative, parabolic_e(&c));
        assert_eq!(
            verify_parabolic(&h, CylinderDirection::SlopeOne, &Rational::zero(), 3),
            Err(Error::ZeroMultiplier)
        );
    }

    #[test]
    fn slope_one_shear_in_rational_basis() {
        // in the basis (1,1), (-1,1) the derivative is [[1, m/2 * 2], [0, 1]] up to scaling
        let c = q(7, 3);
        let h = build_surface(c.clone(), 0).unwrap();
        let m = &(&Rational::from_int(2) * &c) + &Rational::from_int(2);
        let d = verify_parabolic(&h, CylinderDirection::SlopeOne, &m, 4).unwrap().derivative;
        let basis = RatMat2::from_ints(1, -1, 1, 1);
        let conj = &(&basis.inverse().unwrap() * &d) * &basis;
        assert_eq!(conj, RatMat2::new(Rational::one(), m.clone(), Rational::zero(), Rational::one()));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_direction(1, 0).unwrap(), DirectionClass::HorizontalLike);
        assert_eq!(classify_direction(0, 1).unwrap(), DirectionClass::VerticalLike);
        assert_eq!(classify_direction(2, 1).unwrap(), DirectionClass::VerticalLike);
        assert_eq!(classify_direction(1, 2).unwrap(), DirectionClass::HorizontalLike);
        assert_eq!(classify_direction(3, 5).unwrap(), DirectionClass::SlopeOneLike);
        assert_eq!(classify_direction(-6, -4).unwrap(), DirectionClass::HorizontalLike);
        assert_eq!(classify_direction(-4, -6).unwrap(), DirectionClass::VerticalLike);
        assert_eq!(classify_direction(0, 0), Err(Error::ZeroDirection));
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_direction(1, 0).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.base, (1, 0));
        let r = reduce_direction(0, 1).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.base, (0, 1));
        let r = reduce_direction(3, 2).unwrap();
        let m = realize(&r.word, &Rational::one()).unwrap().matrix;
        assert_eq!(r.base, (1, 0));
        assert_eq!(m.apply(&RatVec2::from_ints(1, 0)), RatVec2::from_ints(3, 2));
        assert_eq!(reduce_direction(2, 4), Err(Error::NotPrimitive(2, 4)));
        // not reachable with the horizontal and slope-one parabolics alone
        let r = reduce_direction(1, 4).unwrap();
        let m = realize(&r.word, &Rational::one()).unwrap().matrix;
        assert_eq!(m.apply(&RatVec2::from_ints(r.base.0, r.base.1)), RatVec2::from_ints(1, 4));
    }

    #[test]
    fn phi_pair_examples() {
        let c = q(5, 4);
        let (uc, u1) = phi_pair(&w(""), &RatVec2::from_ints(1, 0), &c).unwrap();
        assert_eq!((uc, u1), (RatVec2::from_ints(1, 0), RatVec2::from_ints(1, 0)));
        let (uc, u1) = phi_pair(&w(""), &RatVec2::from_ints(1, 1), &c).unwrap();
        assert_eq!((uc, u1), (RatVec2::from_ints(1, 1), RatVec2::from_ints(1, 1)));
        let (uc, u1) = phi_pair(&w("E"), &RatVec2::from_ints(1, 0), &c).unwrap();
        assert_eq!(uc, RatVec2::new(q(-5, 4), q(-9, 4)));
        assert_eq!(u1, RatVec2::from_ints(-1, -2));
    }

    #[test]
    fn holonomy_action() {
        let one = Rational::one();
        assert_eq!(automorphism_on_holonomy(&w("D"), &one, &RatVec2::from_ints(0, 1)).unwrap(), RatVec2::from_ints(2, 1));
        assert_eq!(automorphism_on_holonomy(&w("-"), &q(5, 4), &RatVec2::from_ints(3, -7)).unwrap(), RatVec2::from_ints(-3, 7));
        assert_eq!(automorphism_on_holonomy(&w("A"), &one, &RatVec2::from_ints(1, 1)).unwrap(), RatVec2::from_ints(-1, 1));
    }

    #[test]
    fn word_syntax() {
        assert_eq!(w("-CB").to_string(), "-CB");
        assert_eq!(w("ADE").letters().len(), 6);
        assert!("AX".parse::<GroupWord>().is_err());
        assert_eq!(w("AAB-C-").free_reduce(), w("BC"));
        assert_eq!(w("-ABBA").free_reduce(), w("-"));
        let c = q(5, 4);
        let word = w("ADE-C");
        let prod = &realize(&word, &c).unwrap().matrix * &realize(&word.inverse(), &c).unwrap().matrix;
        assert_eq!(prod, RatMat2::identity());
    }

    #[test]
    fn enumeration_counts() {
        let abc = [Symbol::A, Symbol::B, Symbol::C];
        assert_eq!(enumerate_words(&abc, 3, true).len(), 3 + 6 + 12);
        assert_eq!(enumerate_words(&abc, 2, false).len(), 3 + 9);
    }

    fn word_strategy() -> impl Strategy<Value = GroupWord> {
        prop::collection::vec(prop::sample::select(vec![Symbol::A, Symbol::B, Symbol::C, Symbol::NegI, Symbol::D, Symbol::E]), 0..8)
            .prop_map(GroupWord::from_symbols)
    }

    proptest! {
        #[test]
        fn realize_is_homomorphism(a in word_strategy(), b in word_strategy(), n in 4i64..20) {
            let c = q(n, 4);
            let lhs = realize(&a.concat(&b), &c).unwrap().matrix;
            let rhs = &realize(&a, &c).unwrap().matrix * &realize(&b, &c).unwrap().matrix;
            prop_assert_eq!(lhs, rhs);
            let det = realize(&a, &c).unwrap().matrix.det();
            prop_assert!(det == Rational::one() || det == Rational::from_int(-1));
        }

        #[test]
        fn reduction_round_trips(p in -300i64..300, r in -300i64..300) {
            prop_assume!((p, r) != (0, 0) && Rational::gcd_i64(p, r) == 1);
            let red = reduce_direction(p, r).unwrap();
            let m = realize(&red.word, &Rational::one()).unwrap().matrix;
            prop_assert_eq!(m.apply(&RatVec2::from_ints(red.base.0, red.base.1)), RatVec2::from_ints(p, r));
            prop_assert_eq!(classify_direction(red.base.0, red.base.1).unwrap(), classify_direction(p, r).unwrap());
        }

        #[test]
        fn class_is_invariant(a in word_strategy(), p in -20i64..=20, r in -20i64..=20) {
            prop_assume!((p, r) != (0, 0));
            let m = realize(&a, &Rational::one()).unwrap().matrix;
            let image = m.apply(&RatVec2::from_ints(p, r)).to_i64_pair().unwrap();
            prop_assert_eq!(classify_direction(image.0, image.1).unwrap(), classify_direction(p, r).unwrap());
        }
    }
}
