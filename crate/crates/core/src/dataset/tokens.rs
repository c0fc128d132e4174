//! Token generation for relational table rows.
//!
//! Every row is keyed by a 32-character lowercase hex token derived from an
//! MD5 digest over a `(key, data)` pair, where `key` names the table and
//! `data` identifies the row within it. The same pair always hashes to the
//! same token, which is what makes dataset generation reproducible.

use md5::{Digest, Md5};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 32 lowercase hexadecimal characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Token(pub String);

impl Token {
    /// Empty token, used for absent prev/next links.
    pub fn none() -> Token {
        Token(String::new())
    }

    pub fn is_none(&self) -> bool {
        self.0.is_empty()
    }

    /// Check the 32-char lowercase hex shape (empty allowed for links).
    pub fn is_well_formed(&self) -> bool {
        self.0.len() == 32 && self.0.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    }

    pub fn parse(s: &str) -> Result<Token> {
        let t = Token(s.to_string());
        if t.is_well_formed() {
            Ok(t)
        } else {
            Err(Error::Dataset(format!("malformed token {s:?}")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// MD5 over the UTF-8 bytes of `key` followed by the bytes of `data`,
/// rendered as lowercase hex.
pub fn generate_token(key: &str, data: &str) -> Token {
    let mut hasher = Md5::new();
    hasher.update(key.as_bytes());
    hasher.update(data.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(32);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    Token(out)
}
