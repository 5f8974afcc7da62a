//! Permutations of `0..degree`, the carrier for group elements and G-set actions.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored by its image sequence: point `i` maps to `images[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!(
                    "image sequence {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `0..degree` from disjoint-or-not cycles,
    /// applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut img: Vec<usize> = (0..degree).collect();
            for w in cycle.windows(2) {
                if w[0] >= degree || w[1] >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                img[w[0]] = w[1];
            }
            if let (Some(&first), Some(&last)) = (cycle.first(), cycle.last()) {
                if first >= degree || last >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                img[last] = first;
            }
            let c = Perm::from_images(img)?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle decomposition, fixed points omitted, each cycle rotated to start
    /// at its minimal point, cycles sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `(0,1,2)`; `()` is the
    /// identity. Whitespace-insensitive; offsets in errors are relative to `s`.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::Parse {
                    offset: pos,
                    message: "expected '('".into(),
                });
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b',' {
                    pos += 1;
                    skip_ws(&mut pos);
                }
                if pos >= bytes.len() {
                    return Err(Error::Parse {
                        offset: pos,
                        message: "unterminated cycle".into(),
                    });
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(Error::Parse {
                        offset: pos,
                        message: "expected a point number".into(),
                    });
                }
                let point: usize = s[start..pos].parse().map_err(|_| Error::Parse {
                    offset: start,
                    message: "point number too large".into(),
                })?;
                cycle.push(point);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            skip_ws(&mut pos);
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}
