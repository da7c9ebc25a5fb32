//! The bundled demo corpus: ten synthetic texts (six languages in the
//! letters genre plus four German genres) written out as pseudo-text files
//! and a manifest, ready for `batch` and `plot`.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, PathContext, Result};
use crate::model::{params_from_invariants, Invariants};
use crate::synth::{generate_rank_spectrum, pseudo_corpus, SynthConfig};

pub const DEMO_TABLE: &str = include_str!("../../data/demo/demo_texts.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct DemoText {
    pub text_id: String,
    pub language: String,
    pub genre: String,
    pub invariants: Invariants,
    pub tokens: u64,
    pub types: usize,
    pub zipf: f64,
    pub seed: u64,
}

pub fn demo_texts() -> Result<Vec<DemoText>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(DEMO_TABLE.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad number `{}`", &rec[i]),
            })
        };
        out.push(DemoText {
            text_id: rec[0].to_string(),
            language: rec[1].to_string(),
            genre: rec[2].to_string(),
            invariants: Invariants {
                i_lang: num(3)?,
                alpha: num(4)?,
            },
            tokens: num(5)? as u64,
            types: num(6)? as usize,
            zipf: num(7)?,
            seed: num(8)? as u64,
        });
    }
    Ok(out)
}

/// Writes one `.txt` per demo text plus `manifest.csv` into `dir`; returns the
/// manifest path.
pub fn materialize_demo(dir: &Path, lambda1_min: f64) -> Result<PathBuf> {
    fs::create_dir_all(dir).at(dir)?;
    let mut manifest = csv::Writer::from_path(dir.join("manifest.csv"))?;
    manifest.write_record(["text_id", "path", "language", "genre"])?;
    for d in demo_texts()? {
        let params = params_from_invariants(&d.invariants, lambda1_min)?;
        let mut cfg = SynthConfig::new(params, d.tokens, d.types, d.seed);
        cfg.zipf_exponent = d.zipf;
        let spectrum = generate_rank_spectrum(&cfg)?;
        let file = format!("{}.txt", d.text_id);
        let path = dir.join(&file);
        fs::write(&path, pseudo_corpus(&spectrum, d.seed)).at(&path)?;
        manifest.write_record([d.text_id.as_str(), &file, &d.language, &d.genre])?;
    }
    manifest.flush()?;
    Ok(dir.join("manifest.csv"))
}
