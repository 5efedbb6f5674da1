//! JSON file formats for complexes, chains, cochains, maps and characters.
//!
//! Simplices are keyed by their vertex list, `"[0,1,2]"`. Cochain values are
//! exact fractions `"p/q"`; omitted simplices are zero. Complexes list their
//! maximal simplices of positive dimension (faces and vertices implied).
//! Anywhere a complex is expected, a bundled fixture name may stand in for it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::character::DiffChar;
use crate::cochain::{Cochain, Ring};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::phase::{fmt_rational, parse_rational};
use crate::relative::RelChar;
use crate::simplicial::{Chain, Complex, MappingCone, SimplicialMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

/// An inline complex or the name of a bundled fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Name(String),
    Inline(ComplexFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub degree: usize,
    /// Integers, or decimal strings for large values.
    pub coeffs: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub degree: usize,
    pub values: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub vertex_map: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<ComplexRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ComplexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterFile {
    pub degree: usize,
    pub curvature: CochainFile,
    pub lift: CochainFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelCharFile {
    pub degree: usize,
    pub curvature: CochainFile,
    pub cov: CochainFile,
    pub lift_x: CochainFile,
    /// `null` in degree 1.
    pub lift_a: Option<CochainFile>,
    pub map: MapFile,
}

/// Parses JSON, reporting the line and column of any syntax or shape error.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

pub fn simplex_key(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("[{}]", v.join(","))
}

pub fn parse_simplex_key(key: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("simplex key `{key}` is not of the form [v0,v1,...]"));
    let inner = key.trim().strip_prefix('[').and_then(|k| k.strip_suffix(']')).ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Err(bad());
    }
    inner.split(',').map(|v| v.trim().parse::<usize>().map_err(|_| bad())).collect()
}

fn lookup(cx: &Complex, degree: usize, key: &str) -> Result<usize> {
    let s = parse_simplex_key(key)?;
    if s.len() != degree + 1 {
        return Err(Error::InvalidSimplex(s, "wrong number of vertices for the declared degree"));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSimplex(s, "vertices must be strictly increasing"));
    }
    cx.index_of(&s).ok_or(Error::UnknownSimplex(s))
}

fn integer_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("`{n}` is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        _ => Err(Error::Parse(format!("expected an integer, found {v}"))),
    }
}

fn integer_json(k: &BigInt) -> Value {
    match k.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(k.to_string()),
    }
}

fn rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())).ok_or_else(|| Error::Parse(format!("`{n}` is not exact; write it as \"p/q\""))),
        Value::String(s) => parse_rational(s),
        _ => Err(Error::Parse(format!("expected \"p/q\", found {v}"))),
    }
}

// ------------------------------------------------------------------ complexes

impl ComplexFile {
    pub fn of(cx: &Complex) -> ComplexFile {
        ComplexFile {
            name: cx.name().to_string(),
            vertices: cx.n_vertices(),
            simplices: cx.maximal_simplices().into_iter().filter(|s| s.len() > 1).collect(),
        }
    }

    pub fn build(&self) -> Result<Complex> {
        Complex::new(self.name.clone(), self.vertices, &self.simplices)
    }
}

impl ComplexRef {
    pub fn resolve(&self) -> Result<Arc<Complex>> {
        match self {
            ComplexRef::Name(n) => fixtures::complex_by_name(n).ok_or_else(|| Error::Parse(format!("no bundled complex named `{n}`"))),
            ComplexRef::Inline(f) => Ok(Arc::new(f.build()?)),
        }
    }
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    parse::<ComplexFile>(text)?.build()
}

pub fn complex_json(cx: &Complex) -> String {
    to_pretty(&ComplexFile::of(cx))
}

// --------------------------------------------------------------------- chains

impl ChainFile {
    pub fn of(cx: &Complex, c: &Chain) -> ChainFile {
        let coeffs = c.terms().map(|(i, k)| (simplex_key(cx.simplex(c.degree(), i)), integer_json(k))).collect();
        ChainFile { degree: c.degree(), coeffs }
    }

    pub fn build(&self, cx: &Complex) -> Result<Chain> {
        let mut v = vec![BigInt::zero(); cx.count(self.degree)];
        for (key, k) in &self.coeffs {
            v[lookup(cx, self.degree, key)?] += integer_value(k)?;
        }
        Ok(Chain::new(self.degree, v))
    }
}

// ------------------------------------------------------------------- cochains

impl CochainFile {
    pub fn of(cx: &Complex, c: &Cochain) -> CochainFile {
        let values = c
            .values()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (simplex_key(cx.simplex(c.degree(), i)), Value::from(fmt_rational(x))))
            .collect();
        CochainFile { degree: c.degree(), values }
    }

    pub fn build(&self, cx: &Complex) -> Result<Cochain> {
        let mut v = vec![BigRational::zero(); cx.count(self.degree)];
        for (key, x) in &self.values {
            v[lookup(cx, self.degree, key)?] += rational_value(x)?;
        }
        Cochain::new(self.degree, v, Ring::Rational)
    }
}

// ----------------------------------------------------------------------- maps

impl MapFile {
    /// The bare vertex map.
    pub fn of(phi: &SimplicialMap) -> MapFile {
        MapFile { vertex_map: phi.vertex_map().to_vec(), source: None, target: None }
    }

    /// The vertex map together with both complexes inline.
    pub fn of_full(phi: &SimplicialMap) -> MapFile {
        MapFile {
            vertex_map: phi.vertex_map().to_vec(),
            source: Some(ComplexRef::Inline(ComplexFile::of(phi.source()))),
            target: Some(ComplexRef::Inline(ComplexFile::of(phi.target()))),
        }
    }

    /// Resolves the map; complexes given in the file take precedence over
    /// the defaults.
    pub fn build(&self, source: Option<Arc<Complex>>, target: Option<Arc<Complex>>) -> Result<SimplicialMap> {
        let pick = |r: &Option<ComplexRef>, d: Option<Arc<Complex>>, what: &str| match r {
            Some(r) => r.resolve(),
            None => d.ok_or_else(|| Error::Parse(format!("map file names no {what} complex"))),
        };
        SimplicialMap::new(pick(&self.source, source, "source")?, pick(&self.target, target, "target")?, self.vertex_map.clone())
    }
}

// ----------------------------------------------------------------- characters

impl CharacterFile {
    pub fn of(h: &DiffChar) -> CharacterFile {
        CharacterFile {
            degree: h.degree(),
            curvature: CochainFile::of(h.complex(), h.curvature()),
            lift: CochainFile::of(h.complex(), h.lift()),
        }
    }

    pub fn build(&self, cx: Arc<Complex>) -> Result<DiffChar> {
        if self.curvature.degree != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: self.curvature.degree });
        }
        let omega = self.curvature.build(&cx)?;
        let lift = self.lift.build(&cx)?;
        DiffChar::new(cx, omega, lift)
    }
}

impl RelCharFile {
    pub fn of(f: &RelChar) -> RelCharFile {
        let cone = f.cone();
        RelCharFile {
            degree: f.degree(),
            curvature: CochainFile::of(cone.x(), f.curvature()),
            cov: CochainFile::of(cone.a(), f.cov()),
            lift_x: CochainFile::of(cone.x(), f.lift_x()),
            lift_a: f.lift_a().map(|b| CochainFile::of(cone.a(), b)),
            map: MapFile::of_full(cone.map()),
        }
    }

    /// `x` is the target of the map unless the map file carries its own.
    pub fn build(&self, x: Option<Arc<Complex>>) -> Result<RelChar> {
        let phi = self.map.build(None, x)?;
        let cone = Arc::new(MappingCone::new(phi));
        if self.curvature.degree != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: self.curvature.degree });
        }
        let lift_a = match &self.lift_a {
            Some(b) => Some(b.build(cone.a())?),
            None => None,
        };
        RelChar::new(
            cone.clone(),
            self.curvature.build(cone.x())?,
            self.cov.build(cone.a())?,
            self.lift_x.build(cone.x())?,
            lift_a,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::relative::find_section;

    #[test]
    fn keys_round_trip() {
        assert_eq!(simplex_key(&[0, 2, 5]), "[0,2,5]");
        assert_eq!(parse_simplex_key("[0, 2,5]").unwrap(), vec![0, 2, 5]);
        assert!(parse_simplex_key("0,1").is_err());
        assert!(parse_simplex_key("[]").is_err());
    }

    #[test]
    fn complexes_round_trip() {
        for name in fixtures::FIXTURE_NAMES {
            let cx = fixtures::complex_by_name(name).unwrap();
            let text = complex_json(&cx);
            let back = parse_complex(&text).unwrap();
            assert_eq!(back, *cx);
            assert_eq!(back.name(), name);
            assert_eq!(complex_json(&back), text);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_complex("{\n  \"name\": \"x\",\n  \"vertices\": oops\n}").unwrap_err();
        match e {
            Error::Parse(m) => assert!(m.starts_with("line 3"), "{m}"),
            other => panic!("{other:?}"),
        }
        let e = parse_complex(r#"{"name": "x", "vertices": 2, "simplices": [[0, 4]]}"#).unwrap_err();
        assert!(matches!(e, Error::InvalidSimplex(..)), "{e:?}");
    }

    #[test]
    fn chains_and_cochains_round_trip() {
        let t2 = fixtures::torus();
        let (g1, _, fund) = fixtures::torus_cycles(&t2);
        for c in [g1, fund] {
            let f = ChainFile::of(t2.complex(), &c);
            let back: ChainFile = parse(&to_pretty(&f)).unwrap();
            assert_eq!(back.build(t2.complex()).unwrap(), c);
        }
        let mut rng = random::rng(5);
        for k in 0..=2 {
            let c = random::rational_cochain(&mut rng, t2.complex(), k);
            let back: CochainFile = parse(&to_pretty(&CochainFile::of(t2.complex(), &c))).unwrap();
            assert_eq!(back.build(t2.complex()).unwrap().values(), c.values());
        }
        let bad: CochainFile = parse(r#"{"degree": 1, "values": {"[0,1]": "1/0"}}"#).unwrap();
        assert!(bad.build(t2.complex()).is_err());
        let unknown: CochainFile = parse(r#"{"degree": 1, "values": {"[0,9]": "1/2"}}"#).unwrap();
        assert_eq!(unknown.build(t2.complex()).unwrap_err(), Error::UnknownSimplex(vec![0, 9]));
    }

    #[test]
    fn characters_and_maps_round_trip() {
        let t2 = fixtures::torus();
        let h = fixtures::poincare_character(&t2);
        let text = to_pretty(&CharacterFile::of(&h));
        let back = parse::<CharacterFile>(&text).unwrap().build(t2.complex().clone()).unwrap();
        assert_eq!(back.curvature().values(), h.curvature().values());
        assert_eq!(back.lift().values(), h.lift().values());
        assert_eq!(to_pretty(&CharacterFile::of(&back)), text);

        let p = fixtures::rp2();
        let lp = fixtures::rp2_torsion_loop(&p);
        let m: MapFile = parse(&to_pretty(&MapFile::of_full(&lp))).unwrap();
        assert_eq!(m.build(None, None).unwrap(), lp);
        let bare: MapFile = parse(r#"{"vertex_map": [0, 1, 3]}"#).unwrap();
        assert!(bare.build(None, Some(p.clone())).is_err());
        let named: MapFile = parse(r#"{"vertex_map": [0, 1, 3], "source": "S1_3", "target": "RP2_6"}"#).unwrap();
        assert_eq!(named.build(None, None).unwrap(), lp);
    }

    #[test]
    fn relative_characters_round_trip() {
        let (s2, eq) = fixtures::sphere_with_equator();
        let cone = Arc::new(MappingCone::new(eq));
        let mut rng = random::rng(9);
        for k in 1..=3 {
            let h = random::character(&mut rng, &s2, k);
            let f = find_section(&cone, &h).unwrap();
            let text = to_pretty(&RelCharFile::of(&f));
            let back = parse::<RelCharFile>(&text).unwrap().build(None).unwrap();
            assert!(back.equals(&f));
            assert_eq!(back.lift_x().values(), f.lift_x().values());
            assert_eq!(to_pretty(&RelCharFile::of(&back)), text);
        }
    }
}
