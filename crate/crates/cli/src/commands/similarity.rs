use std::path::Path;

use emoculture::corpus::{load_embeddings, load_lexicon, pair_sets};
use emoculture::metrics::{aggregate_similarity, independent_t_test, SimilarityReport, TTestVariant};
use emoculture::{SimilarityReportF64, TTestResultF64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::SimilarityArgs;
use crate::config::{existing, existing_opt, FileConfig};
use crate::error::{CliError, Result};
use crate::output::{path_string, Output};

#[derive(Serialize)]
struct ReportDoc<'a> {
    report: &'a SimilarityReportF64,
}

#[derive(Serialize)]
struct TTestDoc<'a> {
    a: String,
    b: String,
    n_a: usize,
    n_b: usize,
    mean_a: f64,
    mean_b: f64,
    result: &'a TTestResultF64,
}

/// Reads a report written by this command, or a bare report object.
pub fn load_report(path: &Path) -> Result<SimilarityReportF64> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read report {}: {e}", path.display())))?;
    let mut value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("invalid report {}: {e}", path.display())))?;
    if let Some(inner) = value.get_mut("report") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| CliError::validation(format!("invalid report {}: {e}", path.display())))
}

fn side_label(report: &SimilarityReportF64) -> String {
    let s = &report.settings;
    format!(
        "{}/{} vs {}/{}",
        s.left.model_id, s.left.language, s.right.model_id, s.right.language
    )
}

pub fn run(args: SimilarityArgs, config: FileConfig) -> Result<()> {
    let cfg = config.similarity;
    let lexicon_path = existing(args.common.lexicon.or(config.lexicon), "lexicon")?;
    let left_path = existing(args.left.or(cfg.left), "left")?;
    let right_path = existing(args.right.or(cfg.right), "right")?;
    let against = existing_opt(args.ttest_against.or(cfg.ttest_against), "ttest-against")?;
    let distance = args.distance.or(cfg.distance).unwrap_or_default();
    let correlation = args.correlation.or(cfg.correlation).unwrap_or_default();
    let variant: TTestVariant = args.ttest_variant.or(cfg.ttest_variant).unwrap_or_default();
    let mut output = Output::new(args.common.out.or(config.out), args.common.format.or(config.format));

    let lexicon = load_lexicon(&lexicon_path)?;
    let left = load_embeddings::<f64>(&left_path, &lexicon)?;
    let right = load_embeddings::<f64>(&right_path, &lexicon)?;
    let pair = pair_sets(&left, &right, &lexicon)?;
    let report: SimilarityReport<f64> = aggregate_similarity(&pair, distance, correlation)?;

    let settings = json!({
        "command": "similarity",
        "lexicon": path_string(&lexicon_path),
        "left": path_string(&left_path),
        "right": path_string(&right_path),
        "distance": distance,
        "correlation": correlation,
        "std_convention": report.settings.std_convention,
        "ttest_variant": variant,
        "ttest_against": against.as_deref().map(path_string),
    });

    println!(
        "{} lemmas paired ({}), distance={distance}, correlation={correlation}",
        pair.len(),
        side_label(&report)
    );
    println!(
        "mean_r = {:.6}  std_r = {:.6}  n_valid = {}/{}",
        report.mean_r,
        report.std_r,
        report.n_valid,
        report.per_lemma.len()
    );
    if report.n_undefined() > 0 {
        println!(
            "{} lemma(s) with undefined correlation were excluded",
            report.n_undefined()
        );
    }

    output.json("similarity", &settings, &ReportDoc { report: &report })?;
    output.csv("similarity", &settings, |buf| report.write_csv(buf))?;

    if let Some(path) = &against {
        let other = load_report(path)?;
        let a = report.valid_correlations();
        let b = other.valid_correlations();
        let result = independent_t_test(&a, &b, variant)?;
        let mean = |x: &[f64]| x.iter().sum::<f64>() / x.len() as f64;
        let doc = TTestDoc {
            a: side_label(&report),
            b: side_label(&other),
            n_a: a.len(),
            n_b: b.len(),
            mean_a: mean(&a),
            mean_b: mean(&b),
            result: &result,
        };
        println!(
            "{variant} t-test against {}: t = {:.6}, dof = {:.3}, p = {:.6e}, significant at 0.05: {}",
            doc.b,
            result.t_statistic,
            result.dof,
            result.p_value,
            if result.significant_05 { "yes" } else { "no" }
        );
        output.json("ttest", &settings, &doc)?;
        output.csv("ttest", &settings, |buf| {
            let mut w = csv::Writer::from_writer(buf);
            w.write_record([
                "a",
                "b",
                "n_a",
                "n_b",
                "mean_a",
                "mean_b",
                "variant",
                "t",
                "dof",
                "p",
                "significant_05",
            ])?;
            w.write_record([
                doc.a.clone(),
                doc.b.clone(),
                doc.n_a.to_string(),
                doc.n_b.to_string(),
                doc.mean_a.to_string(),
                doc.mean_b.to_string(),
                variant.to_string(),
                result.t_statistic.to_string(),
                result.dof.to_string(),
                result.p_value.to_string(),
                result.significant_05.to_string(),
            ])?;
            w.flush()?;
            Ok(())
        })?;
    }
    super::report_written(&output);
    Ok(())
}
