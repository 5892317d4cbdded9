//! JSON files of structure constants.
//!
//! ```json
//! {"kind": "hopf", "trunc": 4,
//!  "spaces": {"A": {"degrees": {"0": ["1"], "1": ["t1"]}}},
//!  "maps": {"A.comult": {"source": "A", "target": "A⊗A",
//!           "entries": [{"deg": 1, "bits": ["011"]}]}}}
//! ```
//!
//! In degree `deg` a map is a matrix with one row per pure tensor of the
//! source and one column per pure tensor of the target, both enumerated
//! lexicographically in the stored basis order. Tensor factors are joined
//! by `⊗` or `*`; the ground field is `k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebroid::{AlgebroidData, Cor22Input, RingComodule};
use super::f2::BitVec;
use super::graded::{Basis, GradedSpace, StructureMap, TensorBasis};
use super::structures::{Algebra, ComoduleData, HopfData};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub degrees: BTreeMap<i64, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub deg: i64,
    pub bits: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub kind: String,
    pub trunc: i64,
    pub spaces: BTreeMap<String, SpaceDoc>,
    pub maps: BTreeMap<String, MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bases: BTreeMap<String, Vec<String>>,
}

/// The structures a file can describe.
#[derive(Clone, Debug)]
pub enum Structure {
    Hopf(HopfData),
    Comodule {
        m: ComoduleData,
        a: HopfData,
        phi: StructureMap,
    },
    Algebroid(Box<Cor22Input>),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Hopf(_) => "hopf",
            Structure::Comodule { .. } => "comodule",
            Structure::Algebroid(_) => "algebroid",
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Fixture(msg.into())
}

fn space_doc(s: &GradedSpace) -> SpaceDoc {
    SpaceDoc {
        degrees: s.degrees().map(|(d, ls)| (d, ls.to_vec())).collect(),
    }
}

fn space_from_doc(name: &str, doc: &SpaceDoc) -> Result<GradedSpace> {
    let mut pairs = Vec::new();
    for (&d, ls) in &doc.degrees {
        for l in ls {
            if ls.iter().filter(|x| *x == l).count() > 1 {
                return Err(bad(format!(
                    "space {name}: label {l:?} repeated in degree {d}"
                )));
            }
        }
        pairs.push((d, ls.clone()));
    }
    Ok(GradedSpace::from_degrees(pairs))
}

struct Spaces(BTreeMap<String, GradedSpace>);

impl Spaces {
    fn factors(&self, expr: &str) -> Result<Vec<&GradedSpace>> {
        let expr = expr.trim();
        if expr == "k" {
            return Ok(Vec::new());
        }
        expr.split(['⊗', '*'])
            .map(|f| {
                let f = f.trim();
                self.0
                    .get(f)
                    .ok_or_else(|| bad(format!("unknown space {f:?}")))
            })
            .collect()
    }
}

fn encode_map(
    f: &StructureMap,
    src: &[&GradedSpace],
    tgt: &[&GradedSpace],
    n: i64,
) -> Vec<EntryDoc> {
    let lo: i64 = src.iter().map(|s| s.min_degree().unwrap_or(0)).sum();
    let mut out = Vec::new();
    for d in lo..=n {
        let sb = TensorBasis::new(src, d);
        if sb.is_empty() {
            continue;
        }
        let tb = TensorBasis::new(tgt, d);
        let m = f.matrix(&sb, &tb);
        if m.rows().iter().all(BitVec::is_zero) {
            continue;
        }
        out.push(EntryDoc {
            deg: d,
            bits: m.rows().iter().map(|r| r.to_string()).collect(),
        });
    }
    out
}

fn decode_map(name: &str, doc: &MapDoc, spaces: &Spaces, n: i64) -> Result<StructureMap> {
    let src = spaces.factors(&doc.source)?;
    let tgt = spaces.factors(&doc.target)?;
    let mut f = StructureMap::new(src.len(), tgt.len());
    for e in &doc.entries {
        if e.deg > n {
            continue;
        }
        let sb = TensorBasis::new(&src, e.deg);
        let tb = TensorBasis::new(&tgt, e.deg);
        if e.bits.len() != sb.len() {
            return Err(bad(format!(
                "map {name}, degree {}: {} rows given, source has dimension {}",
                e.deg,
                e.bits.len(),
                sb.len()
            )));
        }
        for (t, row) in sb.tuples().iter().zip(&e.bits) {
            let v = BitVec::parse(row)
                .filter(|v| v.len() == tb.len())
                .ok_or_else(|| {
                    bad(format!(
                        "map {name}, degree {}: row {row:?} is not a bit string of length {}",
                        e.deg,
                        tb.len()
                    ))
                })?;
            f.set(t.clone(), tb.chain(&v));
        }
    }
    Ok(f)
}

struct Writer<'a> {
    file: StructureFile,
    spaces: BTreeMap<&'a str, &'a GradedSpace>,
}

impl<'a> Writer<'a> {
    fn new(kind: &str, n: i64) -> Self {
        Writer {
            file: StructureFile {
                kind: kind.into(),
                trunc: n,
                spaces: BTreeMap::new(),
                maps: BTreeMap::new(),
                ideal: Vec::new(),
                bases: BTreeMap::new(),
            },
            spaces: BTreeMap::new(),
        }
    }

    fn space(&mut self, name: &'a str, s: &'a GradedSpace) {
        let n = self.file.trunc;
        let mut t = GradedSpace::new();
        for b in s.basis_upto(n) {
            t.push(b.0, s.label(b));
        }
        self.file.spaces.insert(name.into(), space_doc(&t));
        self.spaces.insert(name, s);
    }

    fn factors(&self, expr: &str) -> Vec<&'a GradedSpace> {
        if expr == "k" {
            return Vec::new();
        }
        expr.split('⊗').map(|f| self.spaces[f]).collect()
    }

    fn map(&mut self, name: &str, source: &str, target: &str, f: &StructureMap) {
        let entries = encode_map(
            f,
            &self.factors(source),
            &self.factors(target),
            self.file.trunc,
        );
        self.file.maps.insert(
            name.into(),
            MapDoc {
                source: source.into(),
                target: target.into(),
                entries,
            },
        );
    }

    fn algebra(&mut self, name: &str, a: &Algebra) {
        self.map(
            &format!("{name}.mult"),
            &format!("{name}⊗{name}"),
            name,
            &a.mult,
        );
        self.map(&format!("{name}.unit"), "k", name, &a.unit);
    }

    fn hopf(&mut self, name: &str, h: &HopfData) {
        self.algebra(name, &h.alg);
        self.map(
            &format!("{name}.comult"),
            name,
            &format!("{name}⊗{name}"),
            &h.comult,
        );
        self.map(&format!("{name}.counit"), name, "k", &h.counit);
    }
}

fn labels(s: &GradedSpace, bs: &[Basis]) -> Vec<String> {
    bs.iter().map(|&b| s.label(b).to_string()).collect()
}

pub fn to_file(s: &Structure) -> StructureFile {
    match s {
        Structure::Hopf(h) => {
            let mut w = Writer::new("hopf", h.n);
            w.space("A", h.space());
            w.hopf("A", h);
            w.file
        }
        Structure::Comodule { m, a, phi } => {
            let mut w = Writer::new("comodule", m.n.min(a.n));
            w.space("A", a.space());
            w.space("M", m.space());
            w.hopf("A", a);
            w.algebra("M", &m.alg);
            w.map("M.coaction", "M", "M⊗A", &m.coaction);
            w.map("phi", "M", "A", phi);
            w.file
        }
        Structure::Algebroid(c) => {
            let g = &c.algebroid;
            let mut w = Writer::new("algebroid", g.n);
            w.space("R", &g.r.space);
            w.space("Gamma", &g.gamma.space);
            w.space("M", &c.m.alg.space);
            w.algebra("R", &g.r);
            w.algebra("Gamma", &g.gamma);
            w.map("Gamma.left", "R⊗Gamma", "Gamma", &g.left);
            w.map("Gamma.right", "Gamma⊗R", "Gamma", &g.right);
            w.map("Gamma.comult", "Gamma", "Gamma⊗Gamma", &g.comult);
            w.map("Gamma.counit", "Gamma", "R", &g.counit);
            w.map("Gamma.antipode", "Gamma", "Gamma", &g.antipode);
            w.map("eta_l", "R", "Gamma", &g.eta_l);
            w.map("eta_r", "R", "Gamma", &g.eta_r);
            w.algebra("M", &c.m.alg);
            w.map("M.eta", "R", "M", &c.m.eta);
            w.map("M.coaction", "M", "M⊗Gamma", &c.m.coaction);
            w.map("phi", "M", "Gamma", &c.phi);
            w.file.ideal = labels(&g.r.space, &c.ideal);
            w.file
                .bases
                .insert("M".into(), labels(&c.m.alg.space, &c.m_basis));
            w.file
                .bases
                .insert("Gamma".into(), labels(&g.gamma.space, &c.gamma_basis));
            w.file
        }
    }
}

pub fn to_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&to_file(s)).expect("serializable")
}

struct Reader<'f> {
    file: &'f StructureFile,
    spaces: Spaces,
}

impl Reader<'_> {
    fn space(&self, name: &str) -> Result<GradedSpace> {
        self.spaces
            .0
            .get(name)
            .cloned()
            .ok_or_else(|| bad(format!("missing space {name:?}")))
    }

    fn map(&self, name: &str) -> Result<StructureMap> {
        let doc = self
            .file
            .maps
            .get(name)
            .ok_or_else(|| bad(format!("missing map {name:?}")))?;
        decode_map(name, doc, &self.spaces, self.file.trunc)
    }

    fn algebra(&self, name: &str) -> Result<Algebra> {
        Ok(Algebra {
            space: self.space(name)?,
            mult: self.map(&format!("{name}.mult"))?,
            unit: self.map(&format!("{name}.unit"))?,
        })
    }

    fn hopf(&self, name: &str) -> Result<HopfData> {
        Ok(HopfData {
            n: self.file.trunc,
            alg: self.algebra(name)?,
            comult: self.map(&format!("{name}.comult"))?,
            counit: self.map(&format!("{name}.counit"))?,
        })
    }

    fn find_all(&self, space: &str, ls: &[String]) -> Result<Vec<Basis>> {
        let s = self.space(space)?;
        ls.iter()
            .map(|l| {
                s.find(l)
                    .ok_or_else(|| bad(format!("no basis element {l:?} in {space}")))
            })
            .collect()
    }
}

pub fn from_file(file: &StructureFile) -> Result<Structure> {
    let mut spaces = BTreeMap::new();
    for (name, doc) in &file.spaces {
        if name == "k" || name.contains(['⊗', '*']) {
            return Err(bad(format!("reserved space name {name:?}")));
        }
        spaces.insert(name.clone(), space_from_doc(name, doc)?);
    }
    let r = Reader {
        file,
        spaces: Spaces(spaces),
    };
    let n = file.trunc;
    match file.kind.as_str() {
        "hopf" => Ok(Structure::Hopf(r.hopf("A")?)),
        "comodule" => Ok(Structure::Comodule {
            a: r.hopf("A")?,
            m: ComoduleData {
                n,
                alg: r.algebra("M")?,
                coaction: r.map("M.coaction")?,
            },
            phi: r.map("phi")?,
        }),
        "algebroid" => {
            let algebroid = AlgebroidData {
                n,
                r: r.algebra("R")?,
                gamma: r.algebra("Gamma")?,
                left: r.map("Gamma.left")?,
                right: r.map("Gamma.right")?,
                eta_l: r.map("eta_l")?,
                eta_r: r.map("eta_r")?,
                comult: r.map("Gamma.comult")?,
                counit: r.map("Gamma.counit")?,
                antipode: r.map("Gamma.antipode")?,
            };
            let basis = |name: &str| -> Result<Vec<Basis>> {
                let ls = file
                    .bases
                    .get(name)
                    .ok_or_else(|| bad(format!("missing R-basis of {name}")))?;
                r.find_all(name, ls)
            };
            Ok(Structure::Algebroid(Box::new(Cor22Input {
                ideal: r.find_all("R", &file.ideal)?,
                m: RingComodule {
                    n,
                    alg: r.algebra("M")?,
                    eta: r.map("M.eta")?,
                    coaction: r.map("M.coaction")?,
                },
                phi: r.map("phi")?,
                m_basis: basis("M")?,
                gamma_basis: basis("Gamma")?,
                algebroid,
            })))
        }
        other => Err(bad(format!(
            "unknown kind {other:?} (expected hopf, comodule or algebroid)"
        ))),
    }
}

pub fn from_json(text: &str) -> Result<Structure> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| bad(format!("malformed structure file: {e}")))?;
    from_file(&file)
}

pub fn load(path: &std::path::Path) -> Result<Structure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text)
}

/// The structures written to the fixture directory, by file stem.
pub fn shipped() -> Vec<(String, Structure)> {
    use super::fixtures as fx;
    let mut out: Vec<(String, Structure)> = fx::shipped_hopf()
        .into_iter()
        .map(|(n, h)| (n.to_string(), Structure::Hopf(h)))
        .collect();
    for (n, m, a, phi) in fx::shipped_comodules() {
        out.push((n.to_string(), Structure::Comodule { m, a, phi }));
    }
    out.push(("non_surjective".into(), {
        let (m, a, phi) = fx::non_surjective();
        Structure::Comodule { m, a, phi }
    }));
    for (n, c) in [
        ("cor22_identity", fx::cor22_identity(10)),
        ("cor22_exterior", fx::cor22_exterior(10)),
        ("cor22_module", fx::cor22_module(10)),
    ] {
        out.push((n.into(), Structure::Algebroid(Box::new(c))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/hopf")
    }

    #[test]
    fn round_trip() {
        for (name, s) in shipped() {
            let text = to_json(&s);
            let back = from_json(&text).unwrap();
            assert_eq!(to_json(&back), text, "{name}");
        }
    }

    #[test]
    fn shipped_files_match_constructors() {
        for (name, s) in shipped() {
            let path = dir().join(format!("{name}.json"));
            let on_disk = load(&path).unwrap();
            assert_eq!(to_json(&on_disk), to_json(&s), "{name}");
        }
    }

    #[test]
    #[ignore = "rewrites the fixture directory"]
    fn regenerate() {
        std::fs::create_dir_all(dir()).unwrap();
        for (name, s) in shipped() {
            std::fs::write(dir().join(format!("{name}.json")), to_json(&s) + "\n").unwrap();
        }
    }

    #[test]
    fn decoded_hopf_matches() {
        let h = super::super::fixtures::exterior(&[1], 4);
        let Structure::Hopf(back) = from_json(&to_json(&Structure::Hopf(h.clone()))).unwrap()
        else {
            panic!()
        };
        assert_eq!(back, h);
    }

    #[test]
    fn malformed_rows_are_reported() {
        let h = super::super::fixtures::exterior(&[1], 4);
        let mut f = to_file(&Structure::Hopf(h));
        f.maps.get_mut("A.comult").unwrap().entries[0].bits[0] = "01".into();
        let err = from_file(&f).unwrap_err();
        assert!(
            matches!(err, Error::Fixture(ref m) if m.contains("A.comult")),
            "{err}"
        );
        let text =
            to_json(&Structure::Hopf(super::super::fixtures::trivial(2))).replace("A⊗A", "A*A");
        assert!(from_json(&text).is_ok());
    }
}
