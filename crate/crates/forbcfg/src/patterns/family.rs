//! Deduplicated sets of forbidden configurations.

use super::canonical::{canonical_config, config_equal};
use crate::matrix::RMatrix;

/// A set of configurations over a common alphabet bound, pairwise
/// inequivalent under [`config_equal`]. Members are kept in insertion order
/// (first spelling wins) and in canonical form whenever they are small
/// enough to canonicalize.
///
/// The family is only deduplicated, never minimized: it may contain both `F`
/// and a `G` with `F ≺ G`, exactly as written down.
#[derive(Clone, Debug)]
pub struct ConfigFamily {
    r: u8,
    members: Vec<RMatrix>,
}

impl ConfigFamily {
    pub fn new(r: u8) -> ConfigFamily {
        ConfigFamily {
            r,
            members: Vec::new(),
        }
    }

    pub fn from_members(r: u8, members: impl IntoIterator<Item = RMatrix>) -> ConfigFamily {
        let mut family = ConfigFamily::new(r);
        for member in members {
            family.insert(member);
        }
        family
    }

    /// Adds a member unless an equivalent configuration is already present.
    /// Returns true when the member was new. The alphabet bound grows to
    /// accommodate the member if needed.
    pub fn insert(&mut self, member: RMatrix) -> bool {
        if self.members.iter().any(|existing| {
            existing.row_count() == member.row_count()
                && existing.col_count() == member.col_count()
                && config_equal(existing, &member)
        }) {
            return false;
        }
        self.r = self.r.max(member.alphabet());
        self.members
            .push(canonical_config(&member).unwrap_or(member));
        true
    }

    pub fn members(&self) -> &[RMatrix] {
        &self.members
    }

    pub fn alphabet(&self) -> u8 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union, deduplicated; alphabet bound is the max of the two.
    pub fn union(&self, other: &ConfigFamily) -> ConfigFamily {
        let mut out = self.clone();
        out.r = out.r.max(other.r);
        for member in &other.members {
            out.insert(member.clone());
        }
        out
    }

    /// Members of `self` not equivalent to any member of `other`.
    pub fn minus(&self, other: &ConfigFamily) -> ConfigFamily {
        let members = self
            .members
            .iter()
            .filter(|f| {
                !other.members.iter().any(|g| {
                    f.row_count() == g.row_count()
                        && f.col_count() == g.col_count()
                        && config_equal(f, g)
                })
            })
            .cloned();
        ConfigFamily {
            r: self.r,
            members: members.collect(),
        }
    }

    /// A deterministic text key for the family: canonical members, formatted
    /// compactly and sorted. Used for result caching.
    pub fn canonical_key(&self) -> String {
        let mut keys: Vec<String> = self
            .members
            .iter()
            .map(|f| {
                let canon = canonical_config(f).unwrap_or_else(|_| f.clone());
                let mut digits = String::new();
                for i in 0..canon.row_count() {
                    if i > 0 {
                        digits.push('.');
                    }
                    for j in 0..canon.col_count() {
                        digits.push((b'0' + canon.entry(i, j)) as char);
                    }
                }
                format!("{}x{}:{}", canon.row_count(), canon.col_count(), digits)
            })
            .collect();
        keys.sort_unstable();
        format!("r{}|{}", self.r, keys.join(";"))
    }
}
