use std::path::Path;

use emoculture::circumplex::AnchorLexicon;
use emoculture::corpus::{load_embeddings, load_lexicon};
use emoculture::genprob::{load_records, WordClassMap};
use emoculture::study::load_annotations;

use crate::args::ValidateArgs;
use crate::config::FileConfig;
use crate::error::{CliError, Result};

fn report(failures: &mut usize, kind: &str, path: &Path, outcome: std::result::Result<String, String>) {
    match outcome {
        Ok(summary) => println!("ok    {kind} {}: {summary}", path.display()),
        Err(message) => {
            *failures += 1;
            println!("FAIL  {kind} {}: {message}", path.display());
        }
    }
}

pub fn run(args: ValidateArgs, config: FileConfig) -> Result<()> {
    let mut failures = 0;
    let mut checked = 0;
    let lexicon_path = args.common.lexicon.or(config.lexicon);
    let lexicon = match &lexicon_path {
        Some(path) => {
            checked += 1;
            let loaded = load_lexicon(path).map_err(|e| e.to_string());
            let summary = loaded
                .as_ref()
                .map(|l| {
                    let langs: Vec<&str> = l.languages().iter().map(String::as_str).collect();
                    format!("{} lemmas, languages {}", l.len(), langs.join(","))
                })
                .map_err(Clone::clone);
            report(&mut failures, "lexicon", path, summary);
            loaded.ok()
        }
        None => None,
    };
    for path in &args.embeddings {
        checked += 1;
        let outcome = match &lexicon {
            Some(lexicon) => load_embeddings::<f64>(path, lexicon)
                .map(|s| {
                    format!(
                        "{} vectors, dim {}, {}/{}",
                        s.len(),
                        s.dim(),
                        s.model_id(),
                        s.language()
                    )
                })
                .map_err(|e| e.to_string()),
            None => Err("embedding files are checked against a lexicon; pass --lexicon".into()),
        };
        report(&mut failures, "embeddings", path, outcome);
    }
    if let Some(path) = &args.anchors {
        checked += 1;
        let outcome = AnchorLexicon::load(path)
            .map(|a| {
                let sizes: Vec<String> = a.groups().iter().map(|(g, l)| format!("{g}={}", l.len())).collect();
                sizes.join(" ")
            })
            .map_err(|e| e.to_string());
        report(&mut failures, "anchors", path, outcome);
    }
    let classes = match &args.word_classes {
        Some(path) => {
            checked += 1;
            let loaded = WordClassMap::load(path);
            let outcome = loaded
                .as_ref()
                .map(|m| format!("{} words", m.words.len()))
                .map_err(|e| e.to_string());
            report(&mut failures, "word classes", path, outcome);
            loaded.unwrap_or_default()
        }
        None => WordClassMap::default(),
    };
    if let Some(path) = &args.records {
        checked += 1;
        let outcome = load_records(path)
            .and_then(|records| {
                for r in &records {
                    r.validate(&classes)?;
                }
                Ok(format!("{} records", records.len()))
            })
            .map_err(|e| e.to_string());
        report(&mut failures, "logprob records", path, outcome);
    }
    if let Some(path) = &args.annotations {
        checked += 1;
        let outcome = load_annotations(path)
            .map(|r| format!("{} annotations", r.len()))
            .map_err(|e| e.to_string());
        report(&mut failures, "annotations", path, outcome);
    }
    if checked == 0 {
        return Err(CliError::validation(
            "nothing to validate; pass at least one input file",
        ));
    }
    if failures > 0 {
        return Err(CliError::validation(format!(
            "{failures} of {checked} file(s) failed validation"
        )));
    }
    Ok(())
}
