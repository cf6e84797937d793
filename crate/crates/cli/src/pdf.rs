//! Envelope density on an amplitude grid.

use twdp::channel::envelope_pdf;
use twdp::{SeriesConfig, TwdpParams};

use crate::args::PdfArgs;
use crate::error::CliError;
use crate::output::Table;

/// Tabulates `f_R(r)` at `points` equally spaced amplitudes on `[0, r_max]` and
/// reports the trapezoidal integral in the footer.
pub fn pdf_table(args: &PdfArgs) -> Result<Table, CliError> {
    let (k, gamma, delta) = args.channel.resolve()?;
    let params = TwdpParams::new(k, gamma, 1.0)?;
    if !(args.omega > 0.0 && args.omega.is_finite()) {
        return Err(CliError::Usage(format!("--omega must be finite and > 0, got {}", args.omega)));
    }
    if !(args.r_max > 0.0 && args.r_max.is_finite()) {
        return Err(CliError::Usage(format!("--r-max must be finite and > 0, got {}", args.r_max)));
    }
    if args.points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {}", args.points)));
    }

    let cfg = SeriesConfig::default();
    let h = args.r_max / (args.points - 1) as f64;
    let mut table = Table::new(vec!["r".into(), "pdf".into()]);
    table.header.push(format!("K={k} Gamma={gamma} omega={}", args.omega));
    if let Some(d) = delta {
        table.header.push(format!("Gamma resolved from Delta={d}"));
    }
    for i in 0..args.points {
        let r = if i + 1 == args.points { args.r_max } else { i as f64 * h };
        table.rows.push(vec![r, envelope_pdf(&params, args.omega, r, &cfg)?]);
    }
    let integral: f64 = table.rows.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1])).sum();
    table.footer.push(format!("trapezoid integral over [0, {}]: {integral}", args.r_max));
    Ok(table)
}
