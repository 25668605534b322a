//! CSV renderings of the sweep reports. Every table starts with a header
//! row; reals carry 12 significant digits.

use std::io::{self, Write};

use crate::density::{CountingReport, PartialSumSeries, QSumReport, Theorem5Point};
use crate::numeric::fmt_sig;
use crate::smooth::SmoothCountReport;

pub const SIG_DIGITS: usize = 12;

fn real(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

/// `X,value,target,abs_error`
pub fn write_series_csv(w: &mut impl Write, series: &PartialSumSeries) -> io::Result<()> {
    writeln!(w, "X,value,target,abs_error")?;
    for p in &series.points {
        writeln!(w, "{},{},{},{}", p.x, real(p.value), real(p.target), real(p.abs_error))?;
    }
    Ok(())
}

/// `X,sum,predicted,ratio`
pub fn write_qsum_csv(w: &mut impl Write, report: &QSumReport) -> io::Result<()> {
    writeln!(w, "X,sum,predicted,ratio")?;
    for p in &report.points {
        writeln!(w, "{},{},{},{}", p.x, p.sum, real(p.predicted), real(p.ratio))?;
    }
    Ok(())
}

/// `X,Y,beta,exact,prediction,ratio`
pub fn write_smooth_csv(w: &mut impl Write, rows: &[SmoothCountReport]) -> io::Result<()> {
    writeln!(w, "X,Y,beta,exact,prediction,ratio")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.x,
            r.y,
            real(r.beta),
            r.exact_count,
            real(r.rho_prediction),
            real(r.ratio)
        )?;
    }
    Ok(())
}

/// `X,pi,li,pi_C<label>...,ideals,ck_x,hardy_ramanujan,mertens`
pub fn write_counts_csv(w: &mut impl Write, report: &CountingReport) -> io::Result<()> {
    write!(w, "X,pi,li")?;
    for c in &report.classes {
        write!(w, ",pi_C{c}")?;
    }
    writeln!(w, ",ideals,ck_x,hardy_ramanujan,mertens")?;
    for r in &report.rows {
        write!(w, "{},{},{}", r.x, r.pi, real(r.li))?;
        for c in &r.pi_c {
            write!(w, ",{c}")?;
        }
        writeln!(
            w,
            ",{},{},{},{}",
            r.ideals,
            real(r.ck_x),
            real(r.hardy_ramanujan),
            real(r.mertens)
        )?;
    }
    Ok(())
}

/// `X,mobius_sum,mobius_ratio,mobius_omega_sum,mobius_omega_ratio`
pub fn write_theorem5_csv(w: &mut impl Write, points: &[Theorem5Point]) -> io::Result<()> {
    writeln!(w, "X,mobius_sum,mobius_ratio,mobius_omega_sum,mobius_omega_ratio")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{}",
            p.x,
            p.mobius_sum,
            real(p.mobius_ratio),
            p.mobius_omega_sum,
            real(p.mobius_omega_ratio)
        )?;
    }
    Ok(())
}
