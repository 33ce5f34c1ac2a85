use std::collections::HashMap;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::constants::StructureProfile;
use crate::error::{Error, Result};
use crate::group::{closure, direct_product, quotient, DirectProduct, Group, QuotientGroup, Subgroup};
use crate::lab::center;
use crate::primitives::{is_prime, GroupElement, PrimeField, MAX_DEGREE, MAX_DIM};

const DEFAULT_CATALOG: &str = include_str!("../../catalog/default.json");

/// One line of a catalog file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDef {
    pub name: String,
    pub family: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    /// Overrides the family tag used when grouping records for fitting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    /// Prime used when the survey runs at each entry's own prime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<StructureProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
    /// Where `expected_order` comes from, e.g. "brute-force count".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order_source: Option<String>,
}

/// How an entry was put together, kept when witnesses need the pieces.
#[derive(Clone)]
pub enum Structure {
    Plain,
    Product(DirectProduct),
    Quotient(QuotientGroup),
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub def: EntryDef,
    pub group: Group,
    pub structure: Structure,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.def.name
    }

    pub fn family_tag(&self) -> &str {
        self.def.tag.as_deref().unwrap_or(&self.def.family)
    }

    /// Representation dimension used to group families: the profile's `n`,
    /// else the matrix size, else the permutation degree.
    pub fn dim(&self) -> Option<u32> {
        if let Some(p) = &self.def.profile {
            return Some(p.n);
        }
        match self.group.elements().first()? {
            GroupElement::Mat(m) => Some(m.dim() as u32),
            GroupElement::Perm(p) => Some(p.degree() as u32),
            GroupElement::Pair(..) => None,
        }
    }

    /// The entry's own prime: explicit `p`, else the field characteristic of
    /// a matrix family, else 0.
    pub fn default_prime(&self) -> u64 {
        if let Some(p) = self.def.p {
            return p;
        }
        self.def.params.get("p").and_then(Value::as_u64).unwrap_or(0)
    }
}

#[derive(Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Vec<EntryDef>> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json(text: &str, cap: usize) -> Result<Catalog> {
        build_catalog(&Catalog::parse(text)?, cap)
    }

    pub fn load(path: impl AsRef<Path>, cap: usize) -> Result<Catalog> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Catalog::from_json(&text, cap)
    }

    /// The bundled catalog.
    pub fn default_defs() -> Vec<EntryDef> {
        Catalog::parse(DEFAULT_CATALOG).expect("bundled catalog parses")
    }

    pub fn builtin(cap: usize) -> Result<Catalog> {
        build_catalog(&Catalog::default_defs(), cap)
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }
}

/// Builds every entry in order. `product` and `quotient` entries refer to
/// earlier entries by name.
pub fn build_catalog(defs: &[EntryDef], cap: usize) -> Result<Catalog> {
    let mut entries: Vec<CatalogEntry> = Vec::with_capacity(defs.len());
    let mut by_name: HashMap<String, usize> = HashMap::new();
    for def in defs {
        if by_name.contains_key(&def.name) {
            return Err(Error::Catalog(format!("duplicate entry name {:?}", def.name)));
        }
        if let Some(p) = &def.profile {
            p.validate()?;
        }
        let lookup = |key: &str| -> Result<&CatalogEntry> {
            let name = str_param(def, key)?;
            by_name
                .get(name)
                .map(|&i| &entries[i])
                .ok_or_else(|| Error::Catalog(format!("{}: unknown entry {name:?}", def.name)))
        };
        let (group, structure) = match def.family.as_str() {
            "product" => {
                let left = lookup("left")?;
                let right = lookup("right")?;
                let prod = direct_product(&left.group, &right.group, cap)?;
                (prod.group.clone(), Structure::Product(prod))
            }
            "quotient" => {
                let base = lookup("base")?.group.clone();
                let kernel = match def.params.get("kernel") {
                    Some(Value::String(s)) if s == "center" => center(&base),
                    Some(Value::String(s)) if s == "trivial" => Subgroup::trivial(&base),
                    Some(v @ Value::Array(_)) => {
                        let gens: Vec<GroupElement> = serde_json::from_value(v.clone())?;
                        Subgroup::from_elements(&base, &gens)?
                    }
                    _ => {
                        return Err(Error::Catalog(format!(
                            "{}: kernel must be \"center\", \"trivial\" or a generator list",
                            def.name
                        )))
                    }
                };
                let q = quotient(&base, &kernel)?;
                (q.group.clone(), Structure::Quotient(q))
            }
            family => (closure(&generators(def, family)?, cap)?, Structure::Plain),
        };
        let group = group.with_name(def.name.clone());
        if let Some(expected) = def.expected_order {
            if group.order() as u64 != expected {
                return Err(Error::Catalog(format!(
                    "{}: built order {} but expected {expected}",
                    def.name,
                    group.order()
                )));
            }
        }
        by_name.insert(def.name.clone(), entries.len());
        entries.push(CatalogEntry {
            def: def.clone(),
            group,
            structure,
        });
    }
    Ok(Catalog { entries })
}

fn str_param<'a>(def: &'a EntryDef, key: &str) -> Result<&'a str> {
    def.params
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Catalog(format!("{}: missing string parameter {key:?}", def.name)))
}

fn int_param(def: &EntryDef, key: &str) -> Result<u64> {
    def.params
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Catalog(format!("{}: missing integer parameter {key:?}", def.name)))
}

fn matrix_params(def: &EntryDef) -> Result<(usize, u32)> {
    let n = int_param(def, "n")? as usize;
    let p = int_param(def, "p")?;
    if n == 0 || n > MAX_DIM {
        return Err(Error::Catalog(format!("{}: dimension {n} out of range", def.name)));
    }
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    Ok((n, p as u32))
}

fn degree_param(def: &EntryDef, key: &str, degree: impl Fn(u64) -> u64) -> Result<u64> {
    let v = int_param(def, key)?;
    if v == 0 || degree(v) > MAX_DEGREE as u64 {
        return Err(Error::Catalog(format!(
            "{}: parameter {key} = {v} needs degree above {MAX_DEGREE}",
            def.name
        )));
    }
    Ok(v)
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn elementary(n: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = identity_matrix(n);
    m[i][j] = 1;
    m
}

fn diagonal(n: usize, i: usize, v: i64) -> Vec<Vec<i64>> {
    let mut m = identity_matrix(n);
    m[i][i] = v;
    m
}

fn perm_matrix(images: &[usize]) -> Vec<Vec<i64>> {
    let n = images.len();
    let mut m = vec![vec![0; n]; n];
    for (j, &i) in images.iter().enumerate() {
        m[i][j] = 1;
    }
    m
}

fn generators(def: &EntryDef, family: &str) -> Result<Vec<GroupElement>> {
    let mats = |p: u32, rows: Vec<Vec<Vec<i64>>>| -> Result<Vec<GroupElement>> {
        rows.iter().map(|r| GroupElement::matrix(p, r)).collect()
    };
    match family {
        "GL" | "SL" | "borel" | "diagonal" | "monomial" => {
            let (n, p) = matrix_params(def)?;
            let omega = PrimeField::new(p)?.primitive_root() as i64;
            let mut rows = vec![identity_matrix(n)];
            let diag_all = || (0..n).map(|i| diagonal(n, i, omega)).collect::<Vec<_>>();
            let offdiag = || {
                (0..n)
                    .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                    .collect::<Vec<_>>()
            };
            match family {
                "GL" => {
                    rows.push(diagonal(n, 0, omega));
                    rows.extend(offdiag().into_iter().map(|(i, j)| elementary(n, i, j)));
                }
                "SL" => rows.extend(offdiag().into_iter().map(|(i, j)| elementary(n, i, j))),
                "borel" => {
                    rows.extend(diag_all());
                    rows.extend((1..n).map(|i| elementary(n, i - 1, i)));
                }
                "diagonal" => rows.extend(diag_all()),
                _ => {
                    rows.extend(diag_all());
                    if n > 1 {
                        let mut swap: Vec<usize> = (0..n).collect();
                        swap.swap(0, 1);
                        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                        rows.push(perm_matrix(&swap));
                        rows.push(perm_matrix(&cycle));
                    }
                }
            }
            mats(p, rows)
        }
        "symmetric" | "alternating" => {
            let n = degree_param(def, "n", |n| n)? as usize;
            let mut gens = vec![GroupElement::cycles(n, &[])?];
            if family == "symmetric" {
                if n > 1 {
                    let cycle: Vec<usize> = (0..n).collect();
                    gens.push(GroupElement::cycles(n, &[&[0, 1]])?);
                    gens.push(GroupElement::cycles(n, &[&cycle])?);
                }
            } else {
                for i in 2..n {
                    gens.push(GroupElement::cycles(n, &[&[0, 1, i]])?);
                }
            }
            Ok(gens)
        }
        "cyclic" => {
            let n = degree_param(def, "n", |n| n)? as usize;
            let cycle: Vec<usize> = (0..n).collect();
            Ok(vec![GroupElement::cycles(n, &[&cycle])?])
        }
        "dihedral" => {
            // Order 2n. n = 2 is the Klein four-group on four points.
            let n = degree_param(def, "n", |n| n.max(4))? as usize;
            match n {
                1 => Ok(vec![GroupElement::cycles(2, &[&[0, 1]])?]),
                2 => Ok(vec![
                    GroupElement::cycles(4, &[&[0, 1], &[2, 3]])?,
                    GroupElement::cycles(4, &[&[0, 2], &[1, 3]])?,
                ]),
                _ => {
                    let rotation: Vec<usize> = (0..n).collect();
                    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                    Ok(vec![
                        GroupElement::cycles(n, &[&rotation])?,
                        GroupElement::perm(reflection)?,
                    ])
                }
            }
        }
        "quaternion" | "dicyclic" => {
            let n = if family == "quaternion" && !def.params.contains_key("n") {
                2
            } else {
                degree_param(def, "n", |n| 4 * n)?
            };
            dicyclic(n as usize)
        }
        "metacyclic" => {
            let m = int_param(def, "m")?;
            let n = int_param(def, "n")?;
            let r = int_param(def, "r")?;
            if m == 0 || n == 0 || m + n > MAX_DEGREE as u64 {
                return Err(Error::Catalog(format!(
                    "{}: metacyclic needs 1 <= m + n <= {MAX_DEGREE}",
                    def.name
                )));
            }
            let mut power = 1 % m;
            for _ in 0..n {
                power = power * (r % m) % m;
            }
            if r.gcd(&m) != 1 || power != 1 % m {
                return Err(Error::Catalog(format!(
                    "{}: r = {r} must be a unit of order dividing {n} modulo {m}",
                    def.name
                )));
            }
            metacyclic(m as usize, n as usize, r as usize)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// `C_m ⋊ C_n` with the generator of `C_n` acting by `x ↦ r·x`, on `m + n`
/// points: the affine action on `Z/m` next to a plain `n`-cycle.
fn metacyclic(m: usize, n: usize, r: usize) -> Result<Vec<GroupElement>> {
    let degree = m + n;
    let mut a: Vec<usize> = (0..degree).collect();
    let mut b: Vec<usize> = (0..degree).collect();
    for i in 0..m {
        a[i] = (i + 1) % m;
        b[i] = (i * r) % m;
    }
    for j in 0..n {
        b[m + j] = m + (j + 1) % n;
    }
    Ok(vec![GroupElement::perm(a)?, GroupElement::perm(b)?])
}

/// Dicyclic group of order `4n` in its left regular representation.
/// Elements `a^i b^j` (`i < 2n`, `j < 2`) with `b² = a^n`, `b a b⁻¹ = a⁻¹`.
fn dicyclic(n: usize) -> Result<Vec<GroupElement>> {
    let two_n = 2 * n;
    let index = |i: usize, j: usize| i + two_n * j;
    // (a^i b^j)(a^k b^l)
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
        let k = if j == 1 { (two_n - k) % two_n } else { k };
        let mut e = (i + k) % two_n;
        let mut t = j + l;
        if t == 2 {
            e = (e + n) % two_n;
            t = 0;
        }
        (e, t)
    };
    let regular = |g: (usize, usize)| -> Result<GroupElement> {
        let mut images = vec![0; 2 * two_n];
        for i in 0..two_n {
            for j in 0..2 {
                let (e, t) = mul(g, (i, j));
                images[index(i, j)] = index(e, t);
            }
        }
        GroupElement::perm(images)
    };
    Ok(vec![regular((1, 0))?, regular((0, 1))?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use serde_json::json;

    fn entry(family: &str, params: Value) -> EntryDef {
        EntryDef {
            name: "x".into(),
            family: family.into(),
            params: params.as_object().cloned().unwrap_or_default(),
            tag: None,
            p: None,
            profile: None,
            expected_order: None,
            expected_order_source: None,
        }
    }

    fn order(family: &str, params: Value) -> usize {
        build_catalog(&[entry(family, params)], DEFAULT_CAP).unwrap().entries[0]
            .group
            .order()
    }

    #[test]
    fn matrix_family_orders() {
        assert_eq!(order("GL", json!({"n": 2, "p": 2})), 6);
        assert_eq!(order("GL", json!({"n": 2, "p": 3})), 48);
        assert_eq!(order("SL", json!({"n": 2, "p": 5})), 120);
        assert_eq!(order("SL", json!({"n": 3, "p": 2})), 168);
        assert_eq!(order("borel", json!({"n": 2, "p": 3})), 12);
        assert_eq!(order("borel", json!({"n": 3, "p": 2})), 8);
        assert_eq!(order("diagonal", json!({"n": 3, "p": 5})), 64);
        assert_eq!(order("monomial", json!({"n": 2, "p": 3})), 8);
        assert_eq!(order("monomial", json!({"n": 3, "p": 3})), 48);
        assert_eq!(order("GL", json!({"n": 1, "p": 7})), 6);
    }

    #[test]
    fn permutation_family_orders() {
        assert_eq!(order("symmetric", json!({"n": 4})), 24);
        assert_eq!(order("symmetric", json!({"n": 1})), 1);
        assert_eq!(order("alternating", json!({"n": 5})), 60);
        assert_eq!(order("alternating", json!({"n": 2})), 1);
        assert_eq!(order("cyclic", json!({"n": 6})), 6);
        assert_eq!(order("dihedral", json!({"n": 5})), 10);
        assert_eq!(order("dihedral", json!({"n": 2})), 4);
        assert_eq!(order("quaternion", json!({})), 8);
        assert_eq!(order("dicyclic", json!({"n": 3})), 12);
        assert_eq!(order("metacyclic", json!({"m": 7, "n": 3, "r": 2})), 21);
        assert_eq!(order("metacyclic", json!({"m": 3, "n": 4, "r": 2})), 12);
    }

    #[test]
    fn quaternion_is_nonabelian_with_one_involution() {
        let c = build_catalog(&[entry("quaternion", json!({}))], DEFAULT_CAP).unwrap();
        let g = &c.entries[0].group;
        assert!(!g.is_abelian());
        assert_eq!(g.positions().filter(|&x| g.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            build_catalog(&[entry("nope", json!({}))], DEFAULT_CAP),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            build_catalog(&[entry("GL", json!({"n": 3, "p": 3}))], 100),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(build_catalog(&[entry("GL", json!({"n": 2, "p": 4}))], DEFAULT_CAP).is_err());
        assert!(build_catalog(&[entry("metacyclic", json!({"m": 7, "n": 2, "r": 2}))], DEFAULT_CAP)
            .is_err());
        let mut e = entry("cyclic", json!({"n": 4}));
        e.expected_order = Some(5);
        assert!(matches!(build_catalog(&[e], DEFAULT_CAP), Err(Error::Catalog(_))));
    }

    #[test]
    fn references_and_quotients() {
        let text = r#"[
            {"name": "S3", "family": "symmetric", "params": {"n": 3}},
            {"name": "C2", "family": "cyclic", "params": {"n": 2}},
            {"name": "S3xC2", "family": "product", "params": {"left": "S3", "right": "C2"}},
            {"name": "SL23", "family": "SL", "params": {"n": 2, "p": 3}},
            {"name": "PSL23", "family": "quotient", "params": {"base": "SL23", "kernel": "center"},
             "expected_order": 12},
            {"name": "S3xC2/A3", "family": "quotient",
             "params": {"base": "S3xC2", "kernel": [
                {"kind": "pair", "left": {"kind": "perm", "images": [1, 2, 0]},
                 "right": {"kind": "perm", "images": [0, 1]}}]}}
        ]"#;
        let c = Catalog::from_json(text, DEFAULT_CAP).unwrap();
        assert_eq!(c.get("S3xC2").unwrap().group.order(), 12);
        assert!(matches!(c.get("S3xC2").unwrap().structure, Structure::Product(_)));
        assert_eq!(c.get("S3xC2/A3").unwrap().group.order(), 4);
        assert!(c.get("S3xC2/A3").unwrap().group.is_abelian());
        assert!(Catalog::from_json(
            r#"[{"name": "P", "family": "product", "params": {"left": "A", "right": "B"}}]"#,
            DEFAULT_CAP
        )
        .is_err());
    }

    #[test]
    fn building_twice_gives_identical_digests() {
        let a = Catalog::builtin(DEFAULT_CAP).unwrap();
        let b = Catalog::builtin(DEFAULT_CAP).unwrap();
        assert_eq!(a.entries.len(), b.entries.len());
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.group.digest(), y.group.digest(), "{}", x.name());
        }
    }
}
