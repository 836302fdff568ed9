//! Binary embedding files and CSV export.
//!
//! Layout (little-endian):
//!
//! | field | type |
//! |-------|------|
//! | magic | `b"UEMB"` |
//! | version | u16 = 1 |
//! | flags | u16: bit 0 packed binary, bits 8..16 post-quantization bits (0 = none) |
//! | M | u32 |
//! | count | u64 |
//! | map id | u32 length + UTF-8 bytes |
//! | body | `count * M` f64, or `count * ceil(M/8)` bytes of LSB-first bits |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use super::EmbeddingVector;
use crate::error::{io_at, Error, Result};

const MAGIC: &[u8; 4] = b"UEMB";
const VERSION: u16 = 1;
const FLAG_PACKED: u16 = 1;

pub fn write_embeddings<W: Write>(mut w: W, vectors: &[EmbeddingVector]) -> Result<()> {
    let (m, map_id, bits) = match vectors.first() {
        Some(v) => (v.len(), v.map_id.clone(), v.quantized_bits),
        None => (0, Arc::from(""), None),
    };
    for v in vectors {
        if v.len() != m || v.map_id != map_id || v.quantized_bits != bits {
            return Err(Error::Incompatible(
                "all vectors in a file must share length, map id and quantization".into(),
            ));
        }
    }
    let m32 = u32::try_from(m).map_err(|_| Error::Format(format!("M = {m} exceeds u32")))?;
    let bits = bits.unwrap_or(0);
    if bits > 255 {
        return Err(Error::Format(format!("quantization bits {bits} exceed 255")));
    }
    let packed = !vectors.is_empty()
        && vectors.iter().all(|v| {
            v.values
                .iter()
                .all(|x| x.to_bits() == 0f64.to_bits() || x.to_bits() == 1f64.to_bits())
        });
    let flags = (bits as u16) << 8 | if packed { FLAG_PACKED } else { 0 };

    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&flags.to_le_bytes())?;
    w.write_all(&m32.to_le_bytes())?;
    w.write_all(&(vectors.len() as u64).to_le_bytes())?;
    w.write_all(&(map_id.len() as u32).to_le_bytes())?;
    w.write_all(map_id.as_bytes())?;
    let mut buf = Vec::new();
    for v in vectors {
        buf.clear();
        if packed {
            buf.resize(m.div_ceil(8), 0);
            for (i, &x) in v.values.iter().enumerate() {
                if x == 1.0 {
                    buf[i / 8] |= 1 << (i % 8);
                }
            }
        } else {
            for x in &v.values {
                buf.extend_from_slice(&x.to_le_bytes());
            }
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format(format!("truncated file while reading {what}")),
        _ => Error::Stream(e),
    })
}

fn read_array<R: Read, const K: usize>(r: &mut R, what: &str) -> Result<[u8; K]> {
    let mut b = [0u8; K];
    read_exact(r, &mut b, what)?;
    Ok(b)
}

pub fn read_embeddings<R: Read>(mut r: R) -> Result<Vec<EmbeddingVector>> {
    let magic: [u8; 4] = read_array(&mut r, "magic")?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let version = u16::from_le_bytes(read_array(&mut r, "version")?);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let flags = u16::from_le_bytes(read_array(&mut r, "flags")?);
    if flags & 0x00fe != 0 {
        return Err(Error::Format(format!("unknown flags {flags:#06x}")));
    }
    let m = u32::from_le_bytes(read_array(&mut r, "M")?) as usize;
    let count = u64::from_le_bytes(read_array(&mut r, "count")?);
    let id_len = u32::from_le_bytes(read_array(&mut r, "map id length")?) as usize;
    let mut id = vec![0u8; id_len];
    read_exact(&mut r, &mut id, "map id")?;
    let map_id: Arc<str> = String::from_utf8(id)
        .map_err(|_| Error::Format("map id is not UTF-8".into()))?
        .into();
    let packed = flags & FLAG_PACKED != 0;
    let bits = match flags >> 8 {
        0 => None,
        b => Some(b as u32),
    };
    let row_bytes = if packed { m.div_ceil(8) } else { m * 8 };
    let mut out = Vec::new();
    let mut buf = vec![0u8; row_bytes];
    for _ in 0..count {
        read_exact(&mut r, &mut buf, "vector body")?;
        let values = if packed {
            (0..m).map(|i| ((buf[i / 8] >> (i % 8)) & 1) as f64).collect()
        } else {
            buf.chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
                .collect()
        };
        out.push(EmbeddingVector {
            values,
            map_id: map_id.clone(),
            quantized_bits: bits,
        });
    }
    let mut probe = [0u8; 1];
    if r.read(&mut probe)? != 0 {
        return Err(Error::Format("trailing bytes after last vector".into()));
    }
    Ok(out)
}

pub fn save_embeddings(path: impl AsRef<Path>, vectors: &[EmbeddingVector]) -> Result<()> {
    let path = path.as_ref();
    let f = File::create(path).map_err(io_at(path))?;
    write_embeddings(BufWriter::new(f), vectors)
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<Vec<EmbeddingVector>> {
    let path = path.as_ref();
    let f = File::open(path).map_err(io_at(path))?;
    read_embeddings(BufReader::new(f))
}

/// One row per vector: `id,v0,...,v{M-1}`.
pub fn write_embeddings_csv<W: Write>(w: W, vectors: &[EmbeddingVector]) -> Result<()> {
    let m = vectors.first().map_or(0, |v| v.len());
    let mut wr = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string()];
    header.extend((0..m).map(|i| format!("v{i}")));
    wr.write_record(&header)?;
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
        let mut rec = vec![i.to_string()];
        rec.extend(v.values.iter().map(|x| x.to_string()));
        wr.write_record(&rec)?;
    }
    wr.flush()?;
    Ok(())
}
