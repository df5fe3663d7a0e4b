//! Permutations of `{0, .., d-1}`.
//!
//! Internally everything is 0-based. Text I/O is 1-based, either in cycle
//! notation `(1 2 3)(4 5)` or as an image list `[2, 3, 1]`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation (`(1 2)(3 4 5)`, `()` for the identity)
    /// or a 1-based image list (`[2,1,3]` or `2 1 3`).
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for chunk in text.split('(').skip(1) {
                let body = chunk
                    .trim()
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced cycle in `{text}`")))?;
                let cycle = parse_points(body)?;
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            Self::from_cycles(degree, &refs)
        } else {
            let body = text.trim_start_matches('[').trim_end_matches(']');
            let images = parse_points(body)?;
            if images.len() != degree {
                return Err(Error::DomainMismatch { expected: degree, got: images.len() });
            }
            Self::from_images(images)
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in other.images.iter().enumerate() {
            images[self.images[i]] = self.images[x];
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths (fixed points included), sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Lehmer rank in `0..d!`.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&y| y < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(degree: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0; degree];
        for i in (0..degree).rev() {
            let base = degree - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..degree).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    pub fn to_image_string(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v: usize = s.parse().map_err(|_| Error::Parse(format!("bad point `{s}`")))?;
            if v == 0 {
                return Err(Error::Parse("points are 1-based".into()));
            }
            Ok(v - 1)
        })
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
