use std::collections::BTreeSet;

use emoculture::study::{annotator_agreement, load_annotations, mean_awareness, AnnotationRecord};
use emoculture::{AgreementTableF64, AwarenessTableF64};
use serde::Serialize;
use serde_json::json;

use crate::args::StudyArgs;
use crate::config::{existing, FileConfig};
use crate::error::Result;
use crate::output::{compact, path_string, Output};
use crate::svg::{grouped_bars, Bar, Panel};

#[derive(Serialize)]
struct StudyDoc<'a> {
    awareness: &'a AwarenessTableF64,
    agreement: Option<&'a AgreementTableF64>,
}

/// Agreement needs annotator pairs; a file where every group has a single
/// annotator has nothing to correlate.
fn has_pairs(records: &[AnnotationRecord]) -> bool {
    let mut seen = BTreeSet::new();
    let mut groups = BTreeSet::new();
    for r in records {
        let group = (r.language.as_str(), r.model_id.as_str(), r.context_mode);
        if !seen.insert((group, r.annotator_id.as_str())) {
            continue;
        }
        if !groups.insert(group) {
            return true;
        }
    }
    false
}

pub fn run(args: StudyArgs, config: FileConfig) -> Result<()> {
    let annotations_path = existing(args.annotations.or(config.study.annotations), "annotations")?;
    let mut output = Output::new(args.common.out.or(config.out), args.common.format.or(config.format));

    let records = load_annotations(&annotations_path)?;
    let awareness = mean_awareness::<f64>(&records)?;
    let agreement = if has_pairs(&records) {
        Some(annotator_agreement::<f64>(&records)?)
    } else {
        None
    };

    let settings = json!({
        "command": "study",
        "annotations": path_string(&annotations_path),
        "score_range": [1, 7],
        "awareness_groups": ["model_id", "context_mode", "language"],
        "agreement_groups": ["language", "model_id", "context_mode"],
        "agreement": "pearson",
    });

    println!("{} annotations", records.len());
    println!("{:<16} {:<8} {:<6} {:>6} {:>6}", "model", "mode", "lang", "mean", "n");
    for e in &awareness.entries {
        println!(
            "{:<16} {:<8} {:<6} {:>6.2} {:>6}",
            e.model_id, e.context_mode, e.language, e.mean, e.count
        );
    }
    match &agreement {
        Some(table) => {
            println!("{:<6} {:<16} {:<8} {:>8} {:>4}", "lang", "model", "mode", "r", "n");
            for e in &table.entries {
                let r = e.r.map(|r| format!("{r:.3}")).unwrap_or_else(|| "undef".into());
                println!(
                    "{:<6} {:<16} {:<8} {:>8} {:>4}",
                    e.language, e.model_id, e.context_mode, r, e.n_questions
                );
            }
        }
        None => println!("agreement skipped: no group has two annotators"),
    }

    output.json(
        "study",
        &settings,
        &StudyDoc {
            awareness: &awareness,
            agreement: agreement.as_ref(),
        },
    )?;
    output.csv("awareness", &settings, |buf| awareness.write_csv(buf))?;
    if let Some(table) = &agreement {
        output.csv("agreement", &settings, |buf| table.write_csv(buf))?;
    }
    let panels: Vec<Panel> = awareness
        .models()
        .into_iter()
        .map(|model| Panel {
            title: model.to_string(),
            bars: awareness
                .entries
                .iter()
                .filter(|e| e.model_id == model)
                .map(|e| Bar {
                    group: e.context_mode.to_string(),
                    series: e.language.clone(),
                    value: e.mean,
                })
                .collect(),
        })
        .collect();
    output.svg(
        "awareness",
        &grouped_bars("Average cultural awareness", &compact(&settings), &panels, 7.0),
    )?;
    super::report_written(&output);
    Ok(())
}
