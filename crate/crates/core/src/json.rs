//! JSON schemas for every object the crate exchanges, plus a canonical
//! writer: struct fields serialize in declaration order and every float is
//! written with 17 significant digits, so identical values produce
//! byte-identical documents.

use crate::conference::ConferenceMatrix;
use crate::drackn::DracknAdjacency;
use crate::eitff::{FusionFrame, SignatureMatrix};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::numerics::{BlockMatrix, Complex, Mat};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Cover adjacency document: block entry array `p` means column `t` of the
/// block has its single 1 in row `p[t]`; diagonal entries are null.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DracknJson {
    pub n: usize,
    pub m: usize,
    pub blocks: Vec<Vec<Option<Vec<usize>>>>,
}

impl DracknJson {
    pub fn from_adjacency(a: &DracknAdjacency) -> Self {
        let n = a.n();
        DracknJson {
            n,
            m: a.m(),
            blocks: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| a.block(i, j).map(|p| p.images().to_vec()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_adjacency(&self) -> Result<DracknAdjacency> {
        if self.blocks.len() != self.n || self.blocks.iter().any(|row| row.len() != self.n) {
            return Err(Error::Malformed {
                what: "cover document",
                detail: format!("block grid is not {0} x {0}", self.n),
            });
        }
        let mut adj = DracknAdjacency::empty(self.n, self.m);
        for (i, row) in self.blocks.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if let Some(images) = entry {
                    if images.len() != self.m {
                        return Err(Error::Malformed {
                            what: "cover document",
                            detail: format!(
                                "block ({i}, {j}) has {} columns, expected {}",
                                images.len(),
                                self.m
                            ),
                        });
                    }
                    adj.set_block(i, j, Perm::from_images(images.clone()));
                }
            }
        }
        Ok(adj)
    }
}

/// Signature matrix document: `blocks[i][j]` is an `r x r` array of
/// `[re, im]` entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignatureJson {
    pub n: usize,
    pub r: usize,
    pub blocks: Vec<Vec<Vec<Vec<Complex>>>>,
}

impl SignatureJson {
    pub fn from_signature(s: &SignatureMatrix) -> Self {
        let (n, r) = (s.n(), s.r());
        SignatureJson {
            n,
            r,
            blocks: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let block = s.block(i, j);
                            (0..r)
                                .map(|row| (0..r).map(|col| block[(row, col)]).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_signature(&self) -> Result<SignatureMatrix> {
        let malformed = |detail: String| Error::Malformed {
            what: "signature document",
            detail,
        };
        if self.blocks.len() != self.n {
            return Err(malformed(format!("expected {} block rows", self.n)));
        }
        let mut grid = BlockMatrix::zeros(self.n, self.r);
        for (i, row) in self.blocks.iter().enumerate() {
            if row.len() != self.n {
                return Err(malformed(format!("block row {i} has {} entries", row.len())));
            }
            for (j, entries) in row.iter().enumerate() {
                if entries.len() != self.r || entries.iter().any(|er| er.len() != self.r) {
                    return Err(malformed(format!("block ({i}, {j}) is not {0}x{0}", self.r)));
                }
                grid.set_block(
                    i,
                    j,
                    Mat::from_fn(self.r, self.r, |s, t| entries[s][t]),
                );
            }
        }
        Ok(SignatureMatrix::from_grid(grid))
    }
}

/// Conference matrix document, exact mode.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConferenceExactJson {
    pub n: usize,
    pub modulus: u64,
    pub exponents: Vec<Vec<i64>>,
}

/// Conference matrix document, numeric mode.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConferenceNumericJson {
    pub n: usize,
    pub entries: Vec<Vec<Complex>>,
}

/// Either conference document form; exact mode is recognized by its
/// `exponents` field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConferenceJson {
    Exact(ConferenceExactJson),
    Numeric(ConferenceNumericJson),
}

impl ConferenceJson {
    pub fn from_conference(c: &ConferenceMatrix) -> Self {
        match c {
            ConferenceMatrix::Exact {
                n,
                modulus,
                exponents,
            } => ConferenceJson::Exact(ConferenceExactJson {
                n: *n,
                modulus: *modulus,
                exponents: exponents.clone(),
            }),
            ConferenceMatrix::Numeric { entries } => {
                let n = entries.rows();
                ConferenceJson::Numeric(ConferenceNumericJson {
                    n,
                    entries: (0..n)
                        .map(|i| (0..n).map(|j| entries[(i, j)]).collect())
                        .collect(),
                })
            }
        }
    }

    pub fn to_conference(&self) -> Result<ConferenceMatrix> {
        match self {
            ConferenceJson::Exact(doc) => {
                if doc.exponents.len() != doc.n || doc.exponents.iter().any(|r| r.len() != doc.n) {
                    return Err(Error::Malformed {
                        what: "conference document",
                        detail: format!("exponent grid is not {0} x {0}", doc.n),
                    });
                }
                ConferenceMatrix::exact(doc.modulus, doc.exponents.clone())
            }
            ConferenceJson::Numeric(doc) => {
                if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
                    return Err(Error::Malformed {
                        what: "conference document",
                        detail: format!("entry grid is not {0} x {0}", doc.n),
                    });
                }
                ConferenceMatrix::numeric(Mat::from_fn(doc.n, doc.n, |i, j| doc.entries[i][j]))
            }
        }
    }
}

/// Fusion frame document: `M` is the `d x (rn)` synthesis matrix, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameJson {
    pub d: usize,
    pub n: usize,
    pub r: usize,
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "M")]
    pub synthesis: Vec<Complex>,
}

impl FrameJson {
    pub fn from_frame(f: &FusionFrame) -> Self {
        let cols = f.r * f.n;
        FrameJson {
            d: f.d,
            n: f.n,
            r: f.r,
            alpha: f.alpha,
            beta: f.beta,
            synthesis: (0..f.d)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .map(|(i, j)| f.synthesis[(i, j)])
                .collect(),
        }
    }

    pub fn to_frame(&self) -> Result<FusionFrame> {
        let cols = self.r * self.n;
        if self.synthesis.len() != self.d * cols {
            return Err(Error::Malformed {
                what: "frame document",
                detail: format!(
                    "M has {} entries, expected {}",
                    self.synthesis.len(),
                    self.d * cols
                ),
            });
        }
        Ok(FusionFrame {
            d: self.d,
            n: self.n,
            r: self.r,
            synthesis: Mat::from_fn(self.d, cols, |i, j| self.synthesis[i * cols + j]),
            alpha: self.alpha,
            beta: self.beta,
        })
    }
}

/// Field description document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpecJson {
    pub k: u32,
    pub modulus_bits: u32,
    pub generator_bits: u32,
}

impl FieldSpecJson {
    pub fn from_spec(spec: &FieldSpec) -> Self {
        FieldSpecJson {
            k: spec.k(),
            modulus_bits: spec.modulus(),
            generator_bits: spec.generator().bits(),
        }
    }
}

struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes with canonical float formatting (17 significant digits).
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CanonicalFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits valid UTF-8")
}
