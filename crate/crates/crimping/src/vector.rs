//! Crimping vectors, their scaling orbits, and limits over a formal disc.

use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{crimping_weights, CrimpError, Parity, Rational};

/// Exact crimping coordinates (c_1, ..., c_{m-1}) of a singularity of the
/// given parity. The zero vector is the monomial point of the orbit space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrimpingVector {
    parity: Parity,
    m: usize,
    entries: Vec<Rational>,
}

impl CrimpingVector {
    pub fn new(parity: Parity, m: usize, entries: Vec<Rational>) -> Result<Self, CrimpError> {
        if m == 0 {
            return Err(CrimpError::ZeroM);
        }
        if entries.len() != m - 1 {
            return Err(CrimpError::EntryCount {
                m,
                expected: m - 1,
                got: entries.len(),
            });
        }
        Ok(CrimpingVector { parity, m, entries })
    }

    pub fn monomial(parity: Parity, m: usize) -> Result<Self, CrimpError> {
        Self::new(parity, m, vec![Rational::zero(); m.saturating_sub(1)])
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_monomial(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn weights(&self) -> Vec<i64> {
        crimping_weights(self.m, self.parity)
    }

    /// Act by a nonzero scalar: c_l becomes lambda^{w_l} c_l.
    pub fn rescale(&self, lambda: &Rational) -> CrimpingVector {
        let entries = self
            .entries
            .iter()
            .zip(self.weights())
            .map(|(c, w)| c * lambda.pow(w as i32))
            .collect();
        CrimpingVector {
            parity: self.parity,
            m: self.m,
            entries,
        }
    }

    pub fn to_rational_strings(&self) -> Vec<String> {
        self.entries.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_rational_strings(
        parity: Parity,
        m: usize,
        strings: &[String],
    ) -> Result<Self, CrimpError> {
        let entries = strings
            .iter()
            .map(|s| Rational::from_str(s).map_err(|_| CrimpError::BadRational(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parity, m, entries)
    }
}

/// Is there a rational lambda with c'_l = lambda^{w_l} c_l for every l?
/// Zero patterns must match; on the nonzero entries the ratios pin lambda
/// down to at most two candidates through the gcd of their weights.
pub fn crimping_equivalent(
    a: &CrimpingVector,
    b: &CrimpingVector,
) -> Result<Option<Rational>, CrimpError> {
    if a.parity != b.parity || a.m != b.m {
        return Err(CrimpError::ShapeMismatch);
    }
    let weights = a.weights();
    let mut active: Vec<(i64, Rational)> = Vec::new();
    for ((ca, cb), w) in a.entries.iter().zip(&b.entries).zip(weights) {
        match (ca.is_zero(), cb.is_zero()) {
            (true, true) => {}
            (false, false) => active.push((w, cb / ca)),
            _ => return Ok(None),
        }
    }
    if active.is_empty() {
        return Ok(Some(Rational::from_integer(1.into())));
    }

    // Combine the ratio equations lambda^w = r along a Bezout representation
    // of g = gcd(w), giving lambda^g; any solution is a rational g-th root.
    let mut g = active[0].0;
    let mut bezout = vec![1i64];
    for (w, _) in &active[1..] {
        let ext = g.extended_gcd(w);
        for c in bezout.iter_mut() {
            *c *= ext.x;
        }
        bezout.push(ext.y);
        g = ext.gcd;
    }
    let mut rho = Rational::from_integer(1.into());
    for ((_, r), c) in active.iter().zip(&bezout) {
        rho *= r.pow(*c as i32);
    }

    let mut candidates = Vec::new();
    if let Some(root) = rational_root(&rho, g as u32) {
        candidates.push(root.clone());
        if g % 2 == 0 {
            candidates.push(-root);
        }
    }
    Ok(candidates.into_iter().find(|lam| {
        active
            .iter()
            .all(|(w, r)| lam.pow(*w as i32) == *r)
    }))
}

fn rational_root(rho: &Rational, g: u32) -> Option<Rational> {
    if g == 1 {
        return Some(rho.clone());
    }
    let negative = rho.numer().is_negative();
    if negative && g.is_multiple_of(2) {
        return None;
    }
    let abs_num = rho.numer().abs();
    let root_num = abs_num.nth_root(g);
    if root_num.pow(g) != abs_num {
        return None;
    }
    let root_den = rho.denom().nth_root(g);
    if root_den.pow(g) != *rho.denom() {
        return None;
    }
    let signed = if negative { -root_num } else { root_num };
    Some(Rational::new(signed, root_den))
}

/// One crimping coordinate over the formal disc, reduced to the data the
/// limit depends on: its valuation and leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuedEntry {
    Zero,
    Finite { val: i64, lead: Rational },
}

/// A crimping vector whose entries are valued series in the disc parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedCrimping {
    parity: Parity,
    m: usize,
    entries: Vec<ValuedEntry>,
}

impl ValuedCrimping {
    pub fn new(parity: Parity, m: usize, entries: Vec<ValuedEntry>) -> Result<Self, CrimpError> {
        if m == 0 {
            return Err(CrimpError::ZeroM);
        }
        if entries.len() != m - 1 {
            return Err(CrimpError::EntryCount {
                m,
                expected: m - 1,
                got: entries.len(),
            });
        }
        for e in &entries {
            if let ValuedEntry::Finite { lead, .. } = e {
                if lead.is_zero() {
                    return Err(CrimpError::ZeroLead);
                }
            }
        }
        Ok(ValuedCrimping { parity, m, entries })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[ValuedEntry] {
        &self.entries
    }
}

/// Minimal reparametrization exponent b >= 0 such that every rescaled entry
/// extends over the origin, together with the limiting crimping vector:
/// the leading coefficient where w_l b + b_l lands exactly on zero, and
/// zero where it lands above.
pub fn limit_crimping(v: &ValuedCrimping) -> (i64, CrimpingVector) {
    let weights = crimping_weights(v.m, v.parity);
    let mut b = 0i64;
    for (e, w) in v.entries.iter().zip(&weights) {
        if let ValuedEntry::Finite { val, .. } = e {
            b = b.max(Integer::div_ceil(&-val, w));
        }
    }
    let entries = v
        .entries
        .iter()
        .zip(&weights)
        .map(|(e, w)| match e {
            ValuedEntry::Finite { val, lead } if w * b + val == 0 => lead.clone(),
            _ => Rational::zero(),
        })
        .collect();
    (
        b,
        CrimpingVector {
            parity: v.parity,
            m: v.m,
            entries,
        },
    )
}

#[derive(Serialize, Deserialize)]
struct RawValuedCrimping {
    parity: String,
    m: usize,
    entries: Vec<RawValuedEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawValuedEntry {
    val: serde_json::Value,
    lead: String,
}

impl ValuedCrimping {
    pub fn to_json_value(&self) -> serde_json::Value {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                ValuedEntry::Zero => RawValuedEntry {
                    val: serde_json::Value::String("inf".into()),
                    lead: "0".into(),
                },
                ValuedEntry::Finite { val, lead } => RawValuedEntry {
                    val: (*val).into(),
                    lead: lead.to_string(),
                },
            })
            .collect();
        serde_json::to_value(RawValuedCrimping {
            parity: match self.parity {
                Parity::Even => "even".into(),
                Parity::Odd => "odd".into(),
            },
            m: self.m,
            entries,
        })
        .expect("valued crimping serializes")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, CrimpError> {
        let raw: RawValuedCrimping = serde_json::from_value(value.clone())
            .map_err(|e| CrimpError::BadRational(e.to_string()))?;
        let parity = match raw.parity.as_str() {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            other => return Err(CrimpError::BadRational(format!("parity {other:?}"))),
        };
        let entries = raw
            .entries
            .into_iter()
            .map(|e| match &e.val {
                serde_json::Value::String(s) if s == "inf" => {
                    let lead = Rational::from_str(&e.lead)
                        .map_err(|_| CrimpError::BadRational(e.lead.clone()))?;
                    if !lead.is_zero() {
                        return Err(CrimpError::InfiniteWithLead);
                    }
                    Ok(ValuedEntry::Zero)
                }
                serde_json::Value::Number(n) => {
                    let val = n.as_i64().ok_or(CrimpError::BadRational(n.to_string()))?;
                    let lead = Rational::from_str(&e.lead)
                        .map_err(|_| CrimpError::BadRational(e.lead.clone()))?;
                    Ok(ValuedEntry::Finite { val, lead })
                }
                other => Err(CrimpError::BadRational(other.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ValuedCrimping::new(parity, raw.m, entries)
    }
}
