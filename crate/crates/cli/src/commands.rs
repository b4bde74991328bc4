//! Subcommand implementations. Each takes its parsed arguments plus writers
//! for standard output and diagnostics, so tests can drive it in-process.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use mmwave_core::catalog::{
    delay_spread_catalog, delay_spread_lookup, lookup_stratum, path_loss_catalog,
    path_loss_catalog_json, sounder_spec, DelaySpreadEntry,
};
use mmwave_core::estimation::{empirical_cdf, fit_by_stratum, fit_ci_model, summarize_spreads};
use mmwave_core::omni::{record_polarization, synthesize_sample};
use mmwave_core::pathloss::xpd_per_decade_db;
use mmwave_core::pdp::{delay_stats, DetectionThresholds};
use mmwave_core::sim::{
    check_link_budget, generate_campaign_records, generate_pathloss_campaign, generate_pdp_batch,
    CampaignConfig, Execution, LinkStatus,
};
use mmwave_core::{
    CampaignRecord, ChannelError, CiModelParams, Directionality, Environment, FrequencyBand,
    PathLossSample, Pdp, Polarization, StratumKey,
};

use crate::args::{
    CatalogArgs, FitArgs, Format, Globals, PdpStatsArgs, ReportArgs, SimulateArgs, SynthesizeArgs,
};
use crate::error::{CliError, Result};
use crate::io::{
    fmt_f64, params_to_csv, parse_json, parse_params, parse_samples, parse_spreads, read_text,
    samples_to_csv, spreads_to_csv, table_to_csv, to_json, write_atomic, SampleRow, SpreadRow,
};

/// Where a command's main table goes.
fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

// Diagnostics are best effort: a closed stderr must not turn success into failure.
macro_rules! note {
    ($err:expr, $($arg:tt)*) => {
        let _ = writeln!($err, $($arg)*);
    };
}

fn blank_or(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn cmd_fit(
    args: &FitArgs,
    globals: &Globals,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let rows = parse_samples(&read_text(&args.input)?, &args.input)?;
    let band = args.band.map(FrequencyBand::from_ghz).transpose()?;
    let mut outages = 0usize;
    let samples: Vec<PathLossSample> = rows
        .into_iter()
        .filter_map(|row| match row {
            SampleRow::Sample(s) => Some(s),
            SampleRow::Outage { .. } => {
                outages += 1;
                None
            }
        })
        .filter(|s| {
            band.is_none_or(|b| b.same_carrier(&s.band))
                && args.env.is_none_or(|e| e == s.env)
                && args.pol.is_none_or(|p| p == s.pol)
                && args.dir.is_none_or(|d| d == s.dir)
        })
        .collect();
    if outages > 0 {
        note!(err, "note: skipped {outages} outage row(s)");
    }
    if samples.is_empty() {
        return Err(CliError::EmptyInput(format!(
            "no samples to fit in {}",
            args.input.display()
        )));
    }

    let mut fitted = Vec::new();
    let mut table = Vec::new();
    for (stratum, result) in fit_by_stratum(&samples, globals.d0_m) {
        match result {
            Ok(fit) => {
                table.push(vec![
                    fmt_f64(stratum.band.ghz()),
                    stratum.env.to_string(),
                    stratum.pol.to_string(),
                    stratum.dir.to_string(),
                    fit.n_samples.to_string(),
                    fmt_f64(fit.ple_hat),
                    fmt_f64(fit.sigma_hat_db),
                    fmt_f64(fit.d0_m),
                ]);
                fitted.push(fit.to_params()?);
            }
            Err(e @ (ChannelError::DegenerateFit | ChannelError::EmptyInput(_))) => {
                note!(err, "warning: stratum {stratum} skipped: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if fitted.is_empty() {
        return Err(CliError::EmptyInput("no stratum could be fitted".into()));
    }
    let text = table_to_csv(
        &[
            "band_ghz",
            "env",
            "pol",
            "dir",
            "n_samples",
            "ple",
            "sigma_db",
            "d0_m",
        ],
        table,
    );
    emit(None, &text, out)?;
    if let Some(path) = &args.output {
        write_atomic(path, &params_to_csv(&fitted))?;
    }
    Ok(())
}

pub const PDP_STATS_HEADER: [&str; 5] = [
    "pdp",
    "status",
    "mean_excess_delay_ns",
    "rms_delay_spread_ns",
    "total_power_mw",
];

/// Per-PDP statistics followed by summary rows whose value sits in the
/// `rms_delay_spread_ns` column.
pub fn pdp_stats_csv(
    pdps: &[Pdp],
    thresholds: &DetectionThresholds,
    err: &mut dyn Write,
) -> Result<String> {
    let mut rows = Vec::new();
    let mut spreads = Vec::new();
    for (i, pdp) in pdps.iter().enumerate() {
        match delay_stats(&thresholds.apply(pdp)?) {
            Ok(s) => {
                spreads.push(s.rms_delay_spread_ns);
                rows.push(vec![
                    i.to_string(),
                    "ok".into(),
                    fmt_f64(s.mean_excess_delay_ns),
                    fmt_f64(s.rms_delay_spread_ns),
                    fmt_f64(s.total_power_mw),
                ]);
            }
            Err(ChannelError::NoMultipath) => {
                note!(err, "warning: PDP {i} has no positive bin");
                rows.push(vec![
                    i.to_string(),
                    "no_multipath".into(),
                    String::new(),
                    String::new(),
                    fmt_f64(0.0),
                ]);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if spreads.is_empty() {
        note!(
            err,
            "warning: no PDP had detectable multipath; summary omitted"
        );
    } else {
        let s = summarize_spreads(&spreads)?;
        for (label, value) in [
            ("summary_mean", s.mean_ns),
            ("summary_std", s.std_ns),
            ("summary_max", s.max_ns),
            ("summary_p90", s.p90_ns),
        ] {
            rows.push(vec![
                label.into(),
                "summary".into(),
                String::new(),
                fmt_f64(value),
                String::new(),
            ]);
        }
    }
    Ok(table_to_csv(&PDP_STATS_HEADER, rows))
}

pub fn cmd_pdp_stats(
    args: &PdpStatsArgs,
    globals: &Globals,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let pdps: Vec<Pdp> = parse_json(&read_text(&args.input)?, &args.input)?;
    if pdps.is_empty() {
        return Err(CliError::EmptyInput(format!(
            "no PDPs in {}",
            args.input.display()
        )));
    }
    let text = pdp_stats_csv(&pdps, &globals.thresholds(), err)?;
    emit(args.output.as_deref(), &text, out)
}

fn outage_row(record: &CampaignRecord, pol: Polarization) -> SampleRow {
    SampleRow::Outage {
        location_id: record.location_id.clone(),
        stratum: StratumKey {
            band: record.spec.band,
            env: record.env,
            pol,
            dir: Directionality::Omnidirectional,
        },
        distance_m: record.distance_m,
    }
}

/// Omnidirectional sample rows for a batch of records. Locations with no
/// detected power, or a loss above the sounder limit, become outage rows.
pub fn synthesize_rows(
    records: &[CampaignRecord],
    thresholds: &DetectionThresholds,
    err: &mut dyn Write,
) -> Result<Vec<SampleRow>> {
    let mut rows = Vec::with_capacity(records.len());
    for record in records {
        let id = &record.location_id;
        match synthesize_sample(record, thresholds) {
            Ok((sample, warnings)) => {
                for w in warnings {
                    note!(err, "warning: {id}: {w}");
                }
                if check_link_budget(sample.path_loss_db, &record.spec) == LinkStatus::Outage {
                    note!(
                        err,
                        "warning: {id}: path loss {:.2} dB exceeds the {} dB measurable limit; recorded as outage",
                        sample.path_loss_db,
                        record.spec.max_measurable_pl_db
                    );
                    rows.push(outage_row(record, sample.pol));
                } else {
                    rows.push(SampleRow::Sample(sample));
                }
            }
            Err(ChannelError::ZeroPower) => {
                note!(
                    err,
                    "warning: {id}: no detectable power; recorded as outage"
                );
                rows.push(outage_row(record, record_polarization(record)?));
            }
            Err(e) => {
                return Err(CliError::Validation(format!("location {id}: {e}")));
            }
        }
    }
    Ok(rows)
}

pub fn cmd_synthesize_omni(
    args: &SynthesizeArgs,
    globals: &Globals,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let records: Vec<CampaignRecord> = parse_json(&read_text(&args.input)?, &args.input)?;
    if records.is_empty() {
        return Err(CliError::EmptyInput(format!(
            "no campaign records in {}",
            args.input.display()
        )));
    }
    let rows = synthesize_rows(&records, &globals.thresholds(), err)?;
    emit(args.output.as_deref(), &samples_to_csv(&rows), out)
}

pub const FIT_REPORT_HEADER: [&str; 12] = [
    "band_ghz",
    "env",
    "pol",
    "dir",
    "n_samples",
    "outages",
    "ple_configured",
    "ple_fitted",
    "delta_ple",
    "sigma_configured_db",
    "sigma_fitted_db",
    "delta_sigma_db",
];

pub fn load_config(path: &Path, seed: Option<u64>, err: &mut dyn Write) -> Result<CampaignConfig> {
    let mut config: CampaignConfig = parse_json(&read_text(path)?, path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    match config.validate() {
        Ok(()) => Ok(config),
        Err(ChannelError::InvalidConfig(issues)) => {
            for issue in &issues {
                note!(err, "{}: {issue}", path.display());
            }
            Err(CliError::Validation(format!(
                "{}: {} invalid field(s)",
                path.display(),
                issues.len()
            )))
        }
        Err(e) => Err(e.into()),
    }
}

/// Fit-back of a simulated campaign against its configured parameters. The
/// fit uses every generated sample; `outages` counts those the sounder could
/// not have measured.
pub fn fit_report_csv(params: &CiModelParams, samples: &[PathLossSample]) -> Result<String> {
    let fit = fit_ci_model(samples, params.band, params.d0_m)?;
    let outages = match sounder_spec(params.band) {
        Ok(spec) => samples
            .iter()
            .filter(|s| check_link_budget(s.path_loss_db, &spec) == LinkStatus::Outage)
            .count(),
        Err(_) => 0,
    };
    let row = vec![
        fmt_f64(params.band.ghz()),
        params.env.to_string(),
        params.pol.to_string(),
        params.dir.to_string(),
        fit.n_samples.to_string(),
        outages.to_string(),
        fmt_f64(params.ple),
        fmt_f64(fit.ple_hat),
        fmt_f64(fit.ple_hat - params.ple),
        fmt_f64(params.shadow_sigma_db),
        fmt_f64(fit.sigma_hat_db),
        fmt_f64(fit.sigma_hat_db - params.shadow_sigma_db),
    ];
    Ok(table_to_csv(&FIT_REPORT_HEADER, [row]))
}

pub fn cmd_simulate(
    args: &SimulateArgs,
    globals: &Globals,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let config = load_config(&args.config, globals.seed, err)?;
    let exec = if args.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let params = config.params()?;
    let dir = &args.output_dir;
    let mut written = Vec::new();

    let samples = generate_pathloss_campaign(&config, exec)?;
    let rows: Vec<SampleRow> = samples.iter().cloned().map(SampleRow::Sample).collect();
    let path = dir.join("samples.csv");
    write_atomic(&path, &samples_to_csv(&rows))?;
    written.push(path);

    let path = dir.join("fit_report.csv");
    write_atomic(&path, &fit_report_csv(&params, &samples)?)?;
    written.push(path);

    if config.pdp_synthesis.is_some() {
        let pdps = generate_pdp_batch(&config, exec)?;
        let path = dir.join("pdps.json");
        write_atomic(&path, &to_json(&pdps))?;
        written.push(path);

        let thresholds = globals.thresholds();
        let mut spreads = Vec::with_capacity(pdps.len());
        for pdp in &pdps {
            match delay_stats(&thresholds.apply(pdp)?) {
                Ok(s) => spreads.push(SpreadRow {
                    band: config.band,
                    env: config.env,
                    pol: config.pol,
                    rms_delay_spread_ns: s.rms_delay_spread_ns,
                }),
                Err(ChannelError::NoMultipath) => {}
                Err(e) => return Err(e.into()),
            }
        }
        let path = dir.join("delay_spreads.csv");
        write_atomic(&path, &spreads_to_csv(&spreads))?;
        written.push(path);
    }

    if args.records {
        let records = generate_campaign_records(&config, exec)?;
        let path = dir.join("records.json");
        write_atomic(&path, &to_json(&records))?;
        written.push(path);
    }

    for path in written {
        note!(out, "wrote {}", path.display());
    }
    Ok(())
}

pub const COMPARISON_HEADER: [&str; 11] = [
    "section",
    "band_ghz",
    "env",
    "pol",
    "dir",
    "ple_catalog",
    "ple_fitted",
    "delta_ple",
    "sigma_catalog_db",
    "sigma_fitted_db",
    "delta_sigma_db",
];

pub const XPD_HEADER: [&str; 6] = [
    "band_ghz",
    "env",
    "dir",
    "xpd_catalog_db_per_decade",
    "xpd_fitted_db_per_decade",
    "note",
];

pub const SPREAD_SUMMARY_HEADER: [&str; 12] = [
    "band_ghz",
    "env",
    "pol",
    "n",
    "mean_ns",
    "std_ns",
    "max_ns",
    "p90_ns",
    "catalog_mean_ns",
    "catalog_std_ns",
    "catalog_max_ns",
    "catalog_p90_ns",
];

/// Quoted measured XPD for 73.5 GHz omni LOS. The catalog exponents
/// (3.8 - 1.6 = 2.2) give 22 dB/decade; the tabulated values are rounded.
const XPD_73_LOS_QUOTED_DB: f64 = 23.0;

fn band_key(band: FrequencyBand) -> u64 {
    band.ghz().to_bits()
}

/// Everything `report` writes, keyed by file name.
#[derive(Debug, Default)]
pub struct ReportFiles {
    pub files: BTreeMap<String, String>,
}

fn comparison_rows(fits: &[CiModelParams], text: &mut String) -> Vec<Vec<String>> {
    let mut bands: Vec<FrequencyBand> = Vec::new();
    for f in fits {
        if !bands.iter().any(|b| b.same_carrier(&f.band)) {
            bands.push(f.band);
        }
    }
    bands.sort_by(|a, b| a.ghz().total_cmp(&b.ghz()));

    let mut rows = Vec::new();
    for band in bands {
        let section = band.label();
        text.push_str(&format!("== {section} path loss (fitted vs catalog) ==\n"));
        let fitted: Vec<&CiModelParams> =
            fits.iter().filter(|f| f.band.same_carrier(&band)).collect();
        let catalog: Vec<CiModelParams> = path_loss_catalog()
            .into_iter()
            .filter(|c| c.band.same_carrier(&band))
            .collect();
        let mut strata: Vec<StratumKey> = catalog.iter().map(|c| c.stratum()).collect();
        for f in &fitted {
            let key = StratumKey {
                band,
                ..f.stratum()
            };
            if !strata.contains(&key) {
                strata.push(key);
            }
        }
        for key in strata {
            let cat = catalog.iter().find(|c| c.stratum() == key);
            let fit = fitted
                .iter()
                .find(|f| f.env == key.env && f.pol == key.pol && f.dir == key.dir);
            if let (Some(f), Some(c)) = (fit, cat) {
                if f.d0_m != c.d0_m {
                    text.push_str(&format!(
                        "  note: {key} fitted with d0 = {} m, catalog uses {} m\n",
                        f.d0_m, c.d0_m
                    ));
                }
            }
            let delta = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| a - b);
            let (ple_c, ple_f) = (cat.map(|c| c.ple), fit.map(|f| f.ple));
            let (sig_c, sig_f) = (
                cat.map(|c| c.shadow_sigma_db),
                fit.map(|f| f.shadow_sigma_db),
            );
            text.push_str(&format!(
                "  {:<6} {:<3} {:<11} ple {:>6} fitted {:>8} | sigma {:>5} fitted {:>8}\n",
                key.env.as_str(),
                key.pol.as_str(),
                key.dir.as_str(),
                ple_c.map_or("-".into(), |v| format!("{v:.1}")),
                ple_f.map_or("-".into(), |v| format!("{v:.3}")),
                sig_c.map_or("-".into(), |v| format!("{v:.1}")),
                sig_f.map_or("-".into(), |v| format!("{v:.3}")),
            ));
            rows.push(vec![
                section.clone(),
                fmt_f64(band.ghz()),
                key.env.to_string(),
                key.pol.to_string(),
                key.dir.to_string(),
                blank_or(ple_c),
                blank_or(ple_f),
                blank_or(delta(ple_f, ple_c)),
                blank_or(sig_c),
                blank_or(sig_f),
                blank_or(delta(sig_f, sig_c)),
            ]);
        }
    }
    rows
}

fn xpd_rows(fits: &[CiModelParams], text: &mut String) -> Vec<Vec<String>> {
    let mut bands: Vec<FrequencyBand> = Vec::new();
    for f in fits {
        if !bands.iter().any(|b| b.same_carrier(&f.band)) {
            bands.push(f.band);
        }
    }
    bands.sort_by(|a, b| a.ghz().total_cmp(&b.ghz()));

    let mut rows = Vec::new();
    text.push_str("== cross-polarization discrimination, dB per decade of distance ==\n");
    for band in bands {
        for dir in Directionality::ALL {
            for env in Environment::ALL {
                let pick = |pol: Polarization| StratumKey {
                    band,
                    env: *env,
                    pol,
                    dir: *dir,
                };
                let cat = lookup_stratum(pick(Polarization::Vv))
                    .and_then(|co| xpd_per_decade_db(&co, &lookup_stratum(pick(Polarization::Vh))?))
                    .ok();
                let find = |pol: Polarization| {
                    fits.iter().find(|f| {
                        f.band.same_carrier(&band) && f.env == *env && f.pol == pol && f.dir == *dir
                    })
                };
                let fitted = match (find(Polarization::Vv), find(Polarization::Vh)) {
                    (Some(co), Some(cross)) => xpd_per_decade_db(co, cross).ok(),
                    _ => None,
                };
                if cat.is_none() && fitted.is_none() {
                    continue;
                }
                let mut note = String::new();
                if *dir == Directionality::Omnidirectional
                    && *env == Environment::Los
                    && band.same_carrier(&FrequencyBand::GHZ_73_5)
                {
                    note = format!(
                        "catalog exponents give {} dB/decade; {XPD_73_LOS_QUOTED_DB} dB/decade is quoted for the measured data (rounding of the tabulated exponents)",
                        cat.map_or("-".into(), |v| format!("{v:.1}"))
                    );
                }
                text.push_str(&format!(
                    "  {:<8} {:<6} {:<11} catalog {:>6} fitted {:>8}{}\n",
                    band.label(),
                    env.as_str(),
                    dir.as_str(),
                    cat.map_or("-".into(), |v| format!("{v:.1}")),
                    fitted.map_or("-".into(), |v| format!("{v:.3}")),
                    if note.is_empty() {
                        String::new()
                    } else {
                        format!("  ({note})")
                    }
                ));
                rows.push(vec![
                    fmt_f64(band.ghz()),
                    env.to_string(),
                    dir.to_string(),
                    blank_or(cat),
                    blank_or(fitted),
                    note,
                ]);
            }
        }
    }
    rows
}

fn spread_outputs(spreads: &[SpreadRow], files: &mut ReportFiles, text: &mut String) -> Result<()> {
    let mut groups: BTreeMap<(u64, Environment, Polarization), (FrequencyBand, Vec<f64>)> =
        BTreeMap::new();
    for r in spreads {
        groups
            .entry((band_key(r.band), r.env, r.pol))
            .or_insert_with(|| (r.band, Vec::new()))
            .1
            .push(r.rms_delay_spread_ns);
    }
    let mut order: Vec<_> = groups.into_iter().collect();
    order.sort_by(|a, b| {
        a.1 .0
            .ghz()
            .total_cmp(&b.1 .0.ghz())
            .then((a.0 .1, a.0 .2).cmp(&(b.0 .1, b.0 .2)))
    });

    text.push_str("== RMS delay spread, ns (measured vs catalog) ==\n");
    let mut rows = Vec::new();
    for ((_, env, pol), (band, values)) in order {
        let s = summarize_spreads(&values)?;
        let cat: Option<DelaySpreadEntry> = delay_spread_lookup(band, env, pol);
        text.push_str(&format!(
            "  {:<8} {:<5} {:<3} n {:>5}  mean {:>8.3} std {:>8.3} max {:>8.3} p90 {:>8.3}  catalog mean {} p90 {}\n",
            band.label(),
            env.as_str(),
            pol.as_str(),
            values.len(),
            s.mean_ns,
            s.std_ns,
            s.max_ns,
            s.p90_ns,
            cat.map_or("-".into(), |c| c.mean_ns.to_string()),
            cat.map_or("-".into(), |c| c.p90_ns.to_string()),
        ));
        rows.push(vec![
            fmt_f64(band.ghz()),
            env.to_string(),
            pol.to_string(),
            values.len().to_string(),
            fmt_f64(s.mean_ns),
            fmt_f64(s.std_ns),
            fmt_f64(s.max_ns),
            fmt_f64(s.p90_ns),
            blank_or(cat.map(|c| c.mean_ns)),
            blank_or(cat.map(|c| c.std_ns)),
            blank_or(cat.map(|c| c.max_ns)),
            blank_or(cat.map(|c| c.p90_ns)),
        ]);
        let cdf = empirical_cdf(&values)?;
        files.files.insert(
            format!("cdf_{}_{}_{}.csv", band.label(), env, pol),
            table_to_csv(
                &["rms_delay_spread_ns", "cumulative_probability"],
                cdf.into_iter().map(|(v, p)| vec![fmt_f64(v), fmt_f64(p)]),
            ),
        );
    }
    files.files.insert(
        "spread_summary.csv".into(),
        table_to_csv(&SPREAD_SUMMARY_HEADER, rows),
    );
    Ok(())
}

/// Build every report file from fitted models and/or delay spreads.
pub fn build_report(
    fits: Option<&[CiModelParams]>,
    spreads: Option<&[SpreadRow]>,
) -> Result<ReportFiles> {
    let mut files = ReportFiles::default();
    let mut text = String::new();
    if let Some(fits) = fits {
        let rows = comparison_rows(fits, &mut text);
        files.files.insert(
            "comparison.csv".into(),
            table_to_csv(&COMPARISON_HEADER, rows),
        );
        let rows = xpd_rows(fits, &mut text);
        files
            .files
            .insert("xpd.csv".into(), table_to_csv(&XPD_HEADER, rows));
    }
    if let Some(spreads) = spreads {
        spread_outputs(spreads, &mut files, &mut text)?;
    }
    files.files.insert("report.txt".into(), text);
    Ok(files)
}

pub fn cmd_report(
    args: &ReportArgs,
    _globals: &Globals,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    if args.fits.is_none() && args.spreads.is_none() {
        return Err(CliError::EmptyInput(
            "nothing to report: pass --fits and/or --spreads".into(),
        ));
    }
    let fits = match &args.fits {
        Some(path) => {
            let fits = parse_params(&read_text(path)?, path)?;
            if fits.is_empty() {
                note!(err, "warning: {} has no model rows", path.display());
            }
            Some(fits)
        }
        None => None,
    };
    let spreads = match &args.spreads {
        Some(path) => {
            let spreads = parse_spreads(&read_text(path)?, path)?;
            if spreads.is_empty() {
                note!(err, "warning: {} has no delay-spread rows", path.display());
            }
            Some(spreads)
        }
        None => None,
    };
    let report = build_report(fits.as_deref(), spreads.as_deref())?;
    for (name, contents) in &report.files {
        let path = args.output_dir.join(name);
        write_atomic(&path, contents)?;
        note!(out, "wrote {}", path.display());
    }
    Ok(())
}

pub const DELAY_SPREAD_CATALOG_HEADER: [&str; 7] = [
    "band_ghz", "env", "pol", "mean_ns", "std_ns", "max_ns", "p90_ns",
];

pub fn catalog_text(format: Format, delay_spread: bool) -> String {
    match (format, delay_spread) {
        (Format::Json, false) => path_loss_catalog_json() + "\n",
        (Format::Json, true) => to_json(&delay_spread_catalog()),
        (Format::Csv, false) => params_to_csv(&path_loss_catalog()),
        (Format::Csv, true) => table_to_csv(
            &DELAY_SPREAD_CATALOG_HEADER,
            delay_spread_catalog().into_iter().map(|e| {
                vec![
                    fmt_f64(e.band.ghz()),
                    e.env.to_string(),
                    e.pol.to_string(),
                    fmt_f64(e.mean_ns),
                    fmt_f64(e.std_ns),
                    fmt_f64(e.max_ns),
                    fmt_f64(e.p90_ns),
                ]
            }),
        ),
    }
}

pub fn cmd_catalog(
    args: &CatalogArgs,
    _globals: &Globals,
    out: &mut dyn Write,
    _err: &mut dyn Write,
) -> Result<()> {
    emit(
        args.output.as_deref(),
        &catalog_text(args.format, args.delay_spread),
        out,
    )
}
