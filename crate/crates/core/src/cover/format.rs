//! Versioned little-endian binary format for hierarchies.
//!
//! ```text
//! header   magic "HMLSHIER", version u32, criteria u32, levels u32,
//!          vertices u64, senses [u8; criteria]
//! base     edges u64, then per edge: from u32, to u32, cost [u64; criteria]
//! level t  membership [u64; ceil(vertices / 64)] (bit v = vertex v),
//!          edges u64, then per edge: from u32, to u32, cost [u64; criteria],
//!          tag u8 (0 = base copy, 1 = composed), a u32, b u32
//! ```

use std::io::{Read, Write};

use fixedbitset::FixedBitSet;

use crate::cost::CostVector;
use crate::error::FormatError;
use crate::graph::{Edge, Graph, Sense};

use super::{CoverLevel, HierarchicalCover, Provenance};

pub const MAGIC: &[u8; 8] = b"HMLSHIER";
pub const VERSION: u32 = 1;

pub fn write_hierarchy<W: Write>(h: &HierarchicalCover, mut w: W) -> Result<(), FormatError> {
    let base = h.base();
    let n = base.vertex_count();
    let q = base.criteria();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(q as u32).to_le_bytes())?;
    w.write_all(&(h.level_count() as u32).to_le_bytes())?;
    w.write_all(&(n as u64).to_le_bytes())?;
    for s in base.senses() {
        w.write_all(&[matches!(s, Sense::Maximize) as u8])?;
    }

    w.write_all(&(base.edge_count() as u64).to_le_bytes())?;
    for e in base.edges() {
        write_edge(&mut w, e)?;
    }

    for level in h.levels() {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; words];
        for v in level.members().ones() {
            bits[v / 64] |= 1 << (v % 64);
        }
        for word in bits {
            w.write_all(&word.to_le_bytes())?;
        }
        let g = level.graph();
        w.write_all(&(g.edge_count() as u64).to_le_bytes())?;
        for (e, p) in g.edges().iter().zip(level.provenances()) {
            write_edge(&mut w, e)?;
            let (tag, a, b) = match *p {
                Provenance::Base(a) => (0u8, a, 0),
                Provenance::Composed(a, b) => (1u8, a, b),
            };
            w.write_all(&[tag])?;
            w.write_all(&a.to_le_bytes())?;
            w.write_all(&b.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_edge<W: Write>(w: &mut W, e: &Edge) -> std::io::Result<()> {
    w.write_all(&e.from.to_le_bytes())?;
    w.write_all(&e.to.to_le_bytes())?;
    for v in e.cost.as_slice() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_hierarchy<R: Read>(mut r: R) -> Result<HierarchicalCover, FormatError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let q = read_u32(&mut r)? as usize;
    if !(2..=crate::cost::MAX_CRITERIA).contains(&q) {
        return Err(FormatError::Corrupt(format!("criterion count {q}")));
    }
    let levels = read_u32(&mut r)? as usize;
    if levels > super::MAX_LEVELS {
        return Err(FormatError::Corrupt(format!("level count {levels}")));
    }
    let n = read_u64(&mut r)? as usize;
    if n > u32::MAX as usize {
        return Err(FormatError::Corrupt(format!("vertex count {n}")));
    }
    let mut senses = Vec::with_capacity(q);
    for _ in 0..q {
        senses.push(match read_u8(&mut r)? {
            0 => Sense::Minimize,
            1 => Sense::Maximize,
            s => return Err(FormatError::Corrupt(format!("sense tag {s}"))),
        });
    }

    let m = read_u64(&mut r)? as usize;
    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for _ in 0..m {
        edges.push(read_edge(&mut r, q)?);
    }
    let base = Graph::new(n, q, edges)?.with_senses(senses);

    let mut built = Vec::with_capacity(levels);
    for t in 1..=levels {
        let mut members = FixedBitSet::with_capacity(n);
        for word_index in 0..n.div_ceil(64) {
            let word = read_u64(&mut r)?;
            for bit in 0..64 {
                if word >> bit & 1 == 1 {
                    let v = word_index * 64 + bit;
                    if v >= n {
                        return Err(FormatError::Corrupt(format!("level {t}: member {v} out of range")));
                    }
                    members.insert(v);
                }
            }
        }
        let m = read_u64(&mut r)? as usize;
        let below_edges = if t == 1 { base.edge_count() } else { built_edges(&built) };
        let mut edges = Vec::with_capacity(m.min(1 << 24));
        let mut provenance = Vec::with_capacity(m.min(1 << 24));
        for _ in 0..m {
            edges.push(read_edge(&mut r, q)?);
            let tag = read_u8(&mut r)?;
            let a = read_u32(&mut r)?;
            let b = read_u32(&mut r)?;
            let p = match tag {
                0 => Provenance::Base(a),
                1 => Provenance::Composed(a, b),
                _ => return Err(FormatError::Corrupt(format!("level {t}: provenance tag {tag}"))),
            };
            let in_range = |x: u32| (x as usize) < below_edges;
            if !in_range(a) || (tag == 1 && !in_range(b)) {
                return Err(FormatError::Corrupt(format!("level {t}: provenance out of range")));
            }
            provenance.push(p);
        }
        let graph = Graph::new(n, q, edges)?;
        built.push(CoverLevel::from_parts(t, members, graph, provenance)?);
    }
    Ok(HierarchicalCover::from_parts(base, built)?)
}

fn built_edges(built: &[CoverLevel]) -> usize {
    built.last().map_or(0, |l| l.graph().edge_count())
}

fn read_edge<R: Read>(r: &mut R, q: usize) -> Result<Edge, FormatError> {
    let from = read_u32(r)?;
    let to = read_u32(r)?;
    let mut cost = CostVector::zero(q);
    for i in 0..q {
        cost.set(i, read_u64(r)?);
    }
    Ok(Edge { from, to, cost })
}

fn read_u8<R: Read>(r: &mut R) -> std::io::Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

fn read_u32<R: Read>(r: &mut R) -> std::io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> std::io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_hierarchy;
    use crate::graph::fixtures::*;

    #[test]
    fn round_trip_preserves_everything() {
        let (h, _) = build_hierarchy(g5(), 2);
        let mut buf = Vec::new();
        write_hierarchy(&h, &mut buf).unwrap();
        let back = read_hierarchy(&buf[..]).unwrap();
        assert_eq!(back.base(), h.base());
        assert_eq!(back.level_count(), 2);
        for t in 1..=2 {
            assert_eq!(back.cover_level(t).members(), h.cover_level(t).members());
            assert_eq!(back.graph(t), h.graph(t));
            assert_eq!(back.cover_level(t).provenances(), h.cover_level(t).provenances());
        }
        for v in 0..5 {
            assert_eq!(back.top_level(v), h.top_level(v));
        }
    }

    #[test]
    fn header_layout() {
        let (h, _) = build_hierarchy(d4(), 0);
        let mut buf = Vec::new();
        write_hierarchy(&h, &mut buf).unwrap();
        assert_eq!(&buf[..8], MAGIC);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), VERSION);
        assert_eq!(u32::from_le_bytes(buf[12..16].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(buf[16..20].try_into().unwrap()), 0);
        assert_eq!(u64::from_le_bytes(buf[20..28].try_into().unwrap()), 4);
        // senses, edge count, 4 edges of 4+4+16 bytes
        assert_eq!(buf.len(), 28 + 2 + 8 + 4 * 24);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(read_hierarchy(&b"NOTAHIER\x01\0\0\0"[..]), Err(FormatError::BadMagic)));
        let (h, _) = build_hierarchy(g5(), 1);
        let mut buf = Vec::new();
        write_hierarchy(&h, &mut buf).unwrap();
        buf[8] = 9;
        assert!(matches!(read_hierarchy(&buf[..]), Err(FormatError::UnsupportedVersion(9))));
        buf[8] = 1;
        buf.truncate(buf.len() - 3);
        assert!(matches!(read_hierarchy(&buf[..]), Err(FormatError::Io(_))));
    }
}
