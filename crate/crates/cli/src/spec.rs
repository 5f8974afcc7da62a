//! Parser for the group-spec grammar:
//! `C(n) | D(n) | M(m,n,r) | P(spec,spec) | gens(deg; perm; perm; ...)`
//! with permutations in cycle notation. Whitespace-insensitive; errors carry
//! byte offsets into the input.

use burnside::error::Error;
use burnside::group::GroupSpec;
use burnside::perm::Perm;

pub struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, Error> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "empty group spec".into(),
        });
    }
    let mut p = Parser { text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::Parse {
            offset: p.pos,
            message: "trailing input after group spec".into(),
        });
    }
    spec.validate().map_err(|e| Error::Parse {
        offset: 0,
        message: e.to_string(),
    })?;
    Ok(spec)
}

impl<'a> Parser<'a> {
    fn bytes(&self) -> &[u8] {
        self.text.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
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
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_digit() {
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

    fn spec(&mut self) -> Result<GroupSpec, Error> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with("gens") {
            self.pos += 4;
            return self.gens_body();
        }
        let tag = self.peek().ok_or(Error::Parse {
            offset: self.pos,
            message: "expected a group spec".into(),
        })?;
        self.pos += 1;
        match tag {
            b'C' => {
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(GroupSpec::Cyclic(n))
            }
            b'D' => {
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(GroupSpec::Dihedral(n))
            }
            b'M' => {
                self.expect(b'(')?;
                let m = self.number()?;
                self.expect(b',')?;
                let n = self.number()?;
                self.expect(b',')?;
                let r = self.number()?;
                self.expect(b')')?;
                Ok(GroupSpec::Metacyclic { m, n, r })
            }
            b'P' => {
                self.expect(b'(')?;
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                self.expect(b')')?;
                Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
            }
            other => Err(Error::Parse {
                offset: self.pos - 1,
                message: format!("unknown spec tag '{}'", other as char),
            }),
        }
    }

    fn gens_body(&mut self) -> Result<GroupSpec, Error> {
        self.expect(b'(')?;
        let degree = self.number()?;
        let mut gens = Vec::new();
        while self.peek() == Some(b';') {
            self.pos += 1;
            gens.push(self.perm(degree)?);
        }
        self.expect(b')')?;
        Ok(GroupSpec::Generators { degree, gens })
    }

    /// One permutation in cycle notation: a run of balanced `(...)` groups.
    fn perm(&mut self, degree: usize) -> Result<Perm, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.peek() == Some(b'(') {
            let open = self.pos;
            self.pos += 1;
            while self.pos < self.text.len() && self.bytes()[self.pos] != b')' {
                self.pos += 1;
            }
            if self.pos == self.text.len() {
                return Err(Error::Parse {
                    offset: open,
                    message: "unterminated cycle".into(),
                });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                offset: self.pos,
                message: "expected a permutation in cycle notation".into(),
            });
        }
        Perm::parse_cycles(degree, &self.text[start..self.pos]).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset: start + offset,
                message,
            },
            other => Error::Parse {
                offset: start,
                message: other.to_string(),
            },
        })
    }
}
