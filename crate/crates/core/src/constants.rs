//! Explicit constant formulas over numeric structure profiles.
//!
//! `J(n)` and `J'(n)` are always inputs, never computed. All arithmetic is
//! exact.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric invariants standing in for an algebraic group's structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureProfile {
    /// Number of connected components.
    #[serde(rename = "c_G")]
    pub c_g: u32,
    /// Rank of the affine part of the anti-affine subgroup.
    #[serde(rename = "r_G")]
    pub r_g: u32,
    /// Least faithful representation dimension.
    pub n: u32,
    pub kp_order: u64,
    #[serde(rename = "ell_X", default, skip_serializing_if = "Option::is_none")]
    pub ell_x: Option<u32>,
    #[serde(rename = "dim_X", default, skip_serializing_if = "Option::is_none")]
    pub dim_x: Option<u32>,
}

impl StructureProfile {
    pub fn new(c_g: u32, r_g: u32, n: u32, kp_order: u64) -> Result<Self> {
        let p = StructureProfile {
            c_g,
            r_g,
            n,
            kp_order,
            ell_x: None,
            dim_x: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_ell(mut self, ell: u32) -> Result<Self> {
        self.ell_x = Some(ell);
        self.validate()?;
        Ok(self)
    }

    pub fn with_dim(mut self, dim: u32) -> Result<Self> {
        self.dim_x = Some(dim);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidProfile(m));
        if self.c_g == 0 {
            return bad("c_G must be at least 1".into());
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.kp_order == 0 {
            return bad("kp_order must be at least 1".into());
        }
        if self.ell_x == Some(0) {
            return bad("ell_X must be at least 1".into());
        }
        if let Some(dim) = self.dim_x {
            if self.r_g > dim {
                return bad(format!("r_G = {} exceeds dim_X = {dim}", self.r_g));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: StructureProfile = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }
}

fn nonzero(name: &str, v: &BigUint) -> Result<()> {
    if *v == BigUint::ZERO {
        return Err(Error::InvalidProfile(format!("{name} must be positive")));
    }
    Ok(())
}

/// `J(G) = c_G · J(n)^{c_G}`.
pub fn jordan_constant(profile: &StructureProfile, j_n: &BigUint) -> Result<BigUint> {
    profile.validate()?;
    nonzero("J(n)", j_n)?;
    Ok(BigUint::from(profile.c_g) * j_n.pow(profile.c_g))
}

/// `e(G) = 3(r_G + 1)c_G`.
pub fn exponent(profile: &StructureProfile) -> u64 {
    3 * (profile.r_g as u64 + 1) * profile.c_g as u64
}

/// `(J'(G), e(G))` with `J'(G) = c_G · J'(n)^{c_G} · |K_(p)|^{e(G)}`.
pub fn lp_constants(profile: &StructureProfile, jp_n: &BigUint) -> Result<(BigUint, u64)> {
    profile.validate()?;
    nonzero("J'(n)", jp_n)?;
    let e = exponent(profile);
    let e32 = u32::try_from(e)
        .map_err(|_| Error::InvalidProfile(format!("exponent {e} is too large")))?;
    let jp_g = BigUint::from(profile.c_g)
        * jp_n.pow(profile.c_g)
        * BigUint::from(profile.kp_order).pow(e32);
    Ok((jp_g, e))
}

/// Constants for automorphism groups of a variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutConstants {
    /// `ℓ_X · J(n)^{ℓ_X}`
    pub j_x: BigUint,
    /// `ℓ_X · J'(G)^{ℓ_X}`
    pub jp_x: BigUint,
    /// `3(r_G + 1)ℓ_X`
    pub e_x: u64,
}

pub fn aut_constants(
    profile: &StructureProfile,
    j_n: &BigUint,
    jp_g: &BigUint,
) -> Result<AutConstants> {
    profile.validate()?;
    let ell = profile.ell_x.ok_or(Error::ProfileIncomplete("ell_X"))?;
    nonzero("J(n)", j_n)?;
    nonzero("J'(G)", jp_g)?;
    Ok(AutConstants {
        j_x: BigUint::from(ell) * j_n.pow(ell),
        jp_x: BigUint::from(ell) * jp_g.pow(ell),
        e_x: 3 * (profile.r_g as u64 + 1) * ell as u64,
    })
}

/// Every constant derivable from a profile, with the formulas used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub profile: StructureProfile,
    #[serde(rename = "J_n")]
    #[serde(with = "decimal")]
    pub j_n: BigUint,
    #[serde(rename = "Jp_n")]
    #[serde(with = "decimal")]
    pub jp_n: BigUint,
    #[serde(rename = "J_G")]
    #[serde(with = "decimal")]
    pub j_g: BigUint,
    #[serde(rename = "e_G")]
    pub e_g: u64,
    #[serde(rename = "Jp_G")]
    #[serde(with = "decimal")]
    pub jp_g: BigUint,
    #[serde(rename = "J_X", default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub j_x: Option<BigUint>,
    #[serde(rename = "Jp_X", default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub jp_x: Option<BigUint>,
    #[serde(rename = "e_X", default, skip_serializing_if = "Option::is_none")]
    pub e_x: Option<u64>,
    pub formulas: Vec<String>,
}

/// Big constants travel as exact decimal strings: JSON numbers stop at u64.
mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::decimal::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        super::decimal::deserialize(d).map(Some)
    }
}

/// Evaluates all formulas; the automorphism constants appear only when
/// the profile carries `ell_X`.
pub fn constants_report(
    profile: &StructureProfile,
    j_n: &BigUint,
    jp_n: &BigUint,
) -> Result<ConstantsReport> {
    let j_g = jordan_constant(profile, j_n)?;
    let (jp_g, e_g) = lp_constants(profile, jp_n)?;
    let mut formulas = vec![
        "J_G = c_G * J_n^c_G".to_string(),
        "e_G = 3 * (r_G + 1) * c_G".to_string(),
        "Jp_G = c_G * Jp_n^c_G * kp_order^e_G".to_string(),
    ];
    let aut = match profile.ell_x {
        Some(_) => {
            formulas.push("J_X = ell_X * J_n^ell_X".into());
            formulas.push("Jp_X = ell_X * Jp_G^ell_X".into());
            formulas.push("e_X = 3 * (r_G + 1) * ell_X".into());
            Some(aut_constants(profile, j_n, &jp_g)?)
        }
        None => None,
    };
    Ok(ConstantsReport {
        profile: profile.clone(),
        j_n: j_n.clone(),
        jp_n: jp_n.clone(),
        j_g,
        e_g,
        jp_g,
        j_x: aut.as_ref().map(|a| a.j_x.clone()),
        jp_x: aut.as_ref().map(|a| a.jp_x.clone()),
        e_x: aut.map(|a| a.e_x),
        formulas,
    })
}
