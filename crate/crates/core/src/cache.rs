//! On-disk cache of Young's orthogonal form generators.
//!
//! File layout: one line of JSON header terminated by `\n`, followed by the
//! `n − 1` generator matrices as row-major little-endian `f64`. The cache is
//! a pure performance layer; a file that fails validation is rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rep::{build_rep, Generator, RepBlock};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HSPLAB_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct Header {
    schema: u32,
    n: usize,
    lambda: Vec<usize>,
    dim: usize,
    generators: usize,
    ordering: String,
    layout: String,
}

const ORDERING: &str = "standard tableaux, last-letter order";
const LAYOUT: &str = "row-major f64 little-endian";

pub fn cache_path(dir: &Path, lambda: &Partition) -> PathBuf {
    let label: Vec<String> = lambda.parts().iter().map(usize::to_string).collect();
    dir.join(format!("yor_n{}_{}.bin", lambda.n(), label.join("_")))
}

pub fn encode(rep: &RepBlock) -> Vec<u8> {
    let header = Header {
        schema: 1,
        n: rep.n(),
        lambda: rep.lambda().parts().to_vec(),
        dim: rep.dim(),
        generators: rep.generators().len(),
        ordering: ORDERING.into(),
        layout: LAYOUT.into(),
    };
    let mut out = serde_json::to_vec(&header).expect("header serialises");
    out.push(b'\n');
    for g in rep.generators() {
        let m = g.to_dense();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.extend_from_slice(&m[(i, j)].to_le_bytes());
            }
        }
    }
    out
}

pub fn decode(bytes: &[u8], lambda: &Partition) -> Result<RepBlock> {
    let split = bytes.iter().position(|&b| b == b'\n').ok_or_else(|| Error::Cache("missing header".into()))?;
    let header: Header =
        serde_json::from_slice(&bytes[..split]).map_err(|e| Error::Cache(format!("bad header: {e}")))?;
    let d = lambda.dimension_u64() as usize;
    let gens = lambda.n().saturating_sub(1);
    if header.schema != 1
        || header.lambda != lambda.parts()
        || header.dim != d
        || header.generators != gens
        || header.ordering != ORDERING
        || header.layout != LAYOUT
    {
        return Err(Error::Cache(format!("header does not describe {lambda}")));
    }
    let body = &bytes[split + 1..];
    if body.len() != gens * d * d * 8 {
        return Err(Error::Cache("truncated generator data".into()));
    }
    let mut values = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")));
    let mut generators = Vec::with_capacity(gens);
    for _ in 0..gens {
        let m = DMatrix::from_row_iterator(d, d, values.by_ref().take(d * d));
        generators.push(Generator::from_dense(&m)?);
    }
    Ok(RepBlock::from_parts(lambda.clone(), generators))
}

/// Loads `S^λ` from `dir` if a valid file exists, otherwise builds and stores it.
pub fn load_or_build(dir: &Path, lambda: &Partition) -> Result<RepBlock> {
    let path = cache_path(dir, lambda);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(rep) = decode(&bytes, lambda) {
            return Ok(rep);
        }
    }
    let rep = build_rep(lambda);
    fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    // write-then-rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(|e| Error::Cache(e.to_string()))?;
    f.write_all(&encode(&rep)).map_err(|e| Error::Cache(e.to_string()))?;
    drop(f);
    fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(rep)
}

/// Builds `S^λ`, going through the cache when `HSPLAB_CACHE_DIR` is set.
pub fn rep_for(lambda: &Partition) -> Result<RepBlock> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => load_or_build(Path::new(&dir), lambda),
        _ => Ok(build_rep(lambda)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        for parts in [vec![3, 2, 1], vec![4], vec![2, 2, 1, 1]] {
            let lam = Partition::new(parts).unwrap();
            let built = build_rep(&lam);
            let first = load_or_build(dir.path(), &lam).unwrap();
            let bytes_a = fs::read(cache_path(dir.path(), &lam)).unwrap();
            let second = load_or_build(dir.path(), &lam).unwrap();
            assert_eq!(first, built);
            assert_eq!(second, built);
            assert_eq!(bytes_a, encode(&build_rep(&lam)));
        }
    }

    #[test]
    fn corrupt_file_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let lam = Partition::new(vec![3, 1]).unwrap();
        fs::write(cache_path(dir.path(), &lam), b"{\"schema\":1}\nxx").unwrap();
        assert!(decode(&fs::read(cache_path(dir.path(), &lam)).unwrap(), &lam).is_err());
        assert_eq!(load_or_build(dir.path(), &lam).unwrap(), build_rep(&lam));
    }

    #[test]
    fn header_mismatch_rejected() {
        let lam = Partition::new(vec![3, 1]).unwrap();
        let other = Partition::new(vec![2, 1, 1]).unwrap();
        assert!(decode(&encode(&build_rep(&lam)), &other).is_err());
    }
}
