//! G-set expression grammar used on the command line:
//! `coset(i)` for the i-th subgroup class, `+` for disjoint union, and
//! `k*expr` for repetition, e.g. `2*coset(0) + coset(9)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use burnside::error::Error;
use burnside::group::Group;
use burnside::gset::{coset_space, disjoint_union, orbit_decomposition, GSet, OrbitType};
use burnside::subgroup::subgroup_classes;

/// A G-set expression as multiplicities over subgroup-class indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetExpr {
    multiplicities: BTreeMap<usize, usize>,
}

impl GSetExpr {
    pub fn canonical(&self) -> String {
        if self.multiplicities.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(&class, &k)| {
                if k == 1 {
                    format!("coset({class})")
                } else {
                    format!("{k}*coset({class})")
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn from_orbit_type(t: &OrbitType) -> GSetExpr {
        GSetExpr {
            multiplicities: t.counts().clone(),
        }
    }

    pub fn for_gset(x: &GSet) -> GSetExpr {
        GSetExpr::from_orbit_type(&orbit_decomposition(x))
    }

    /// Materializes the expression over a concrete group.
    pub fn evaluate(&self, g: &Arc<Group>) -> Result<GSet, Error> {
        let classes = subgroup_classes(g);
        let mut out = GSet::empty(Arc::clone(g));
        for (&class, &k) in &self.multiplicities {
            if class >= classes.len() {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!(
                        "coset({class}) out of range: the group has {} subgroup classes",
                        classes.len()
                    ),
                });
            }
            let orbit = coset_space(g, &classes[class].representative)?;
            for _ in 0..k {
                out = disjoint_union(&out, &orbit)?;
            }
        }
        Ok(out)
    }
}

pub fn parse_gset_expr(text: &str) -> Result<GSetExpr, Error> {
    let mut p = ExprParser { text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::Parse {
            offset: p.pos,
            message: "trailing input after G-set expression".into(),
        });
    }
    Ok(expr)
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                offset: self.pos,
                message: format!("expected '{}'", c as char),
            })
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                offset: start,
                message: "expected a number".into(),
            });
        }
        self.text[start..self.pos].parse().map_err(|_| Error::Parse {
            offset: start,
            message: "number too large".into(),
        })
    }

    fn expr(&mut self) -> Result<GSetExpr, Error> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            for (class, k) in rhs.multiplicities {
                *acc.multiplicities.entry(class).or_insert(0) += k;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GSetExpr, Error> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let k = self.number()?;
            self.expect(b'*')?;
            let mut inner = self.factor()?;
            for v in inner.multiplicities.values_mut() {
                *v *= k;
            }
            return Ok(inner);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<GSetExpr, Error> {
        self.skip_ws();
        if self.text[self.pos..].starts_with("coset") {
            self.pos += 5;
            self.expect(b'(')?;
            let class = self.number()?;
            self.expect(b')')?;
            let mut multiplicities = BTreeMap::new();
            multiplicities.insert(class, 1);
            return Ok(GSetExpr { multiplicities });
        }
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        Err(Error::Parse {
            offset: self.pos,
            message: "expected 'coset(i)' or a parenthesized expression".into(),
        })
    }
}
