//! Data-producing subcommands: spectrum, figure 1-6, observables, density,
//! and potential. Each assembles a [`Table`] and serializes it.

use std::io;

use ptbox::{
    boundary_eval, coordinate_map, density, energy, potential_xt, BoundaryProfile, Sector,
    StateObservables, StationaryState,
};

use crate::config::{profile_desc, profile_tag, Format, RunConfig};
use crate::output::{emit, panel_path, Cell, Table};

fn header(config: &RunConfig, extra: &[String]) -> Vec<String> {
    let mut lines = config.describe();
    lines.extend(extra.iter().cloned());
    lines
}

fn io_err(e: ptbox::Error) -> io::Error {
    io::Error::other(e.to_string())
}

/// `spectrum`: rows (n, E_n^(-), E_n^(+)); the two columns are identical
/// because the partners are strictly isospectral.
pub fn cmd_spectrum(config: &RunConfig) -> io::Result<()> {
    let mut table = Table::new(
        header(config, &["columns: n, e_minus, e_plus".into()]),
        vec!["n", "e_minus", "e_plus"],
    );
    for &n in &config.levels {
        let e = energy(n, &config.params);
        table.push(vec![Cell::Int(n as i64), Cell::Num(e), Cell::Num(e)]);
    }
    emit(&table.render(config.format), config.out.as_deref())
}

/// `observables`: one row per (t, n, sector) with spreads, the Heisenberg
/// product, and the average energy.
pub fn cmd_observables(config: &RunConfig) -> io::Result<()> {
    let mut table = Table::new(
        header(config, &[
            "columns: t, n, sector, delta_x, delta_p, product, avg_energy_re, avg_energy_im".into(),
        ]),
        vec![
            "t",
            "n",
            "sector",
            "delta_x",
            "delta_p",
            "product",
            "avg_energy_re",
            "avg_energy_im",
        ],
    );
    let mut states = Vec::new();
    for &n in &config.levels {
        for &sector in &config.sectors {
            states.push(
                StateObservables::new(n, sector, config.params, &config.quadrature)
                    .map_err(io_err)?,
            );
        }
    }
    for &t in &config.t_grid() {
        for obs in &states {
            let r = obs.record(&config.profile, t).map_err(io_err)?;
            table.push(vec![
                Cell::Num(r.t),
                Cell::Int(r.n as i64),
                Cell::Text(r.sector.to_string()),
                Cell::Num(r.delta_x),
                Cell::Num(r.delta_p),
                Cell::Num(r.product),
                Cell::Num(r.avg_energy.re),
                Cell::Num(r.avg_energy.im),
            ]);
        }
    }
    emit(&table.render(config.format), config.out.as_deref())
}

/// `potential`: V^±(x, t) on the configured grids, x clipped to
/// [0.01 L, 0.99 L] because V diverges at the walls.
pub fn cmd_potential(config: &RunConfig, profile: &BoundaryProfile) -> io::Result<Table> {
    let mut table = Table::new(
        header(config, &[
            format!("panel profile: {}", profile_desc(profile)),
            "x clipped to [0.01 L(t), 0.99 L(t)]: the potential diverges at the walls".into(),
            "columns: t, x, v_minus, v_plus".into(),
        ]),
        vec!["t", "x", "v_minus", "v_plus"],
    );
    for &t in &config.t_grid() {
        let l = boundary_eval(profile, t).map_err(io_err)?.l;
        for i in 0..config.x_steps {
            let frac = 0.01 + 0.98 * i as f64 / (config.x_steps - 1).max(1) as f64;
            let x = frac * l;
            let vm = potential_xt(x, t, profile, &config.params, Sector::Minus).map_err(io_err)?;
            let vp = potential_xt(x, t, profile, &config.params, Sector::Plus).map_err(io_err)?;
            table.push(vec![Cell::Num(t), Cell::Num(x), Cell::Num(vm), Cell::Num(vp)]);
        }
    }
    Ok(table)
}

/// `density`: ρ_n^±(x, t) for every configured level on the full box.
pub fn cmd_density(config: &RunConfig, profile: &BoundaryProfile) -> io::Result<Table> {
    let mut columns = vec!["t".to_string(), "x".to_string()];
    for &n in &config.levels {
        for &sector in &config.sectors {
            columns.push(format!("rho_{sector}_n{n}"));
        }
    }
    let mut table = Table::new(
        header(config, &[
            format!("panel profile: {}", profile_desc(profile)),
            format!("columns: {}", columns.join(", ")),
        ]),
        columns.iter().map(String::as_str).collect(),
    );
    let mut states = Vec::new();
    for &n in &config.levels {
        for &sector in &config.sectors {
            states.push(
                StationaryState::new(n, sector, config.params, &config.quadrature)
                    .map_err(io_err)?,
            );
        }
    }
    for &t in &config.t_grid() {
        let l = boundary_eval(profile, t).map_err(io_err)?.l;
        for i in 0..config.x_steps {
            let x = l * i as f64 / (config.x_steps - 1).max(1) as f64;
            let mut row = vec![Cell::Num(t), Cell::Num(x)];
            for st in &states {
                row.push(Cell::Num(density(st, profile, x, t).map_err(io_err)?));
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// `figure <1-6>`: the data series underlying each published panel, one
/// file per panel (profile), named `<stem>_<profile>.<ext>`.
pub fn cmd_figure(config: &RunConfig, figure_id: u8) -> io::Result<()> {
    if !(1..=6).contains(&figure_id) {
        return Err(io::Error::other(format!(
            "figure id {figure_id} out of range 1..6"
        )));
    }
    let stem = format!("figure{figure_id}");
    for (tag, profile) in config.figure_panels() {
        let table = figure_panel(config, figure_id, &profile)?;
        let path = panel_path(config.out.as_deref(), &stem, tag, config.format);
        emit(&table.render(config.format), Some(&path))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn figure_panel(config: &RunConfig, figure_id: u8, profile: &BoundaryProfile) -> io::Result<Table> {
    match figure_id {
        1 => cmd_potential(config, profile),
        2 => cmd_density(config, profile),
        3 => figure_energy(config, profile),
        4 | 5 => figure_spreads(config, profile, figure_id),
        6 => figure_product(config, profile),
        _ => unreachable!("figure id validated by cmd_figure"),
    }
}

fn sector_pairs(config: &RunConfig) -> Vec<(u32, Sector)> {
    let mut pairs = Vec::new();
    for &n in &config.levels {
        for &sector in &config.sectors {
            pairs.push((n, sector));
        }
    }
    pairs
}

fn build_observables(
    config: &RunConfig,
    pairs: &[(u32, Sector)],
) -> io::Result<Vec<StateObservables>> {
    pairs
        .iter()
        .map(|&(n, sector)| {
            StateObservables::new(n, sector, config.params, &config.quadrature).map_err(io_err)
        })
        .collect()
}

/// Figure 3: real and imaginary parts of the average energy against time.
/// The `*_printed` columns use the published closed-form coefficients,
/// whose imaginary part is nonzero between wall turning points; the plain
/// columns use the self-consistent form (real, matching the defining
/// integral).
fn figure_energy(config: &RunConfig, profile: &BoundaryProfile) -> io::Result<Table> {
    let pairs = sector_pairs(config);
    let mut columns = vec!["t".to_string()];
    for &(n, sector) in &pairs {
        columns.push(format!("re_{sector}_n{n}"));
        columns.push(format!("im_{sector}_n{n}"));
        columns.push(format!("re_printed_{sector}_n{n}"));
        columns.push(format!("im_printed_{sector}_n{n}"));
    }
    let mut table = Table::new(
        header(config, &[
            format!("panel profile: {}", profile_desc(profile)),
            "plain columns: self-consistent average energy (imaginary part identically 0)".into(),
            "printed columns: published coefficient set (complex between wall turning points)"
                .into(),
        ]),
        columns.iter().map(String::as_str).collect(),
    );
    let states = build_observables(config, &pairs)?;
    for &t in &config.t_grid() {
        let mut row = vec![Cell::Num(t)];
        for obs in &states {
            let e = obs.avg_energy(profile, t).map_err(io_err)?;
            let ep = obs.avg_energy_as_printed(profile, t).map_err(io_err)?;
            row.push(Cell::Num(e.re));
            row.push(Cell::Num(e.im));
            row.push(Cell::Num(ep.re));
            row.push(Cell::Num(ep.im));
        }
        table.push(row);
    }
    Ok(table)
}

/// Figures 4 and 5: position and momentum spreads against time.
fn figure_spreads(
    config: &RunConfig,
    profile: &BoundaryProfile,
    figure_id: u8,
) -> io::Result<Table> {
    let pairs = sector_pairs(config);
    let mut columns = vec!["t".to_string()];
    for &(n, sector) in &pairs {
        columns.push(format!("dx_{sector}_n{n}"));
    }
    for &(n, sector) in &pairs {
        columns.push(format!("dp_{sector}_n{n}"));
    }
    let focus = if figure_id == 4 {
        "sector comparison of the spreads"
    } else {
        "anti-correlated variation of the spreads"
    };
    let mut table = Table::new(
        header(config, &[
            format!("panel profile: {}", profile_desc(profile)),
            format!("figure {figure_id}: {focus}"),
        ]),
        columns.iter().map(String::as_str).collect(),
    );
    let states = build_observables(config, &pairs)?;
    for &t in &config.t_grid() {
        let mut row = vec![Cell::Num(t)];
        for obs in &states {
            row.push(Cell::Num(obs.delta_x(profile, t).map_err(io_err)?));
        }
        for obs in &states {
            row.push(Cell::Num(obs.delta_p(profile, t).map_err(io_err)?));
        }
        table.push(row);
    }
    Ok(table)
}

/// Figure 6: the Heisenberg uncertainty product against time.
fn figure_product(config: &RunConfig, profile: &BoundaryProfile) -> io::Result<Table> {
    let pairs = sector_pairs(config);
    let mut columns = vec!["t".to_string()];
    for &(n, sector) in &pairs {
        columns.push(format!("product_{sector}_n{n}"));
    }
    let mut table = Table::new(
        header(config, &[
            format!("panel profile: {}", profile_desc(profile)),
            "Heisenberg products; every value obeys the 1/2 lower bound".into(),
        ]),
        columns.iter().map(String::as_str).collect(),
    );
    let states = build_observables(config, &pairs)?;
    for &t in &config.t_grid() {
        let mut row = vec![Cell::Num(t)];
        for obs in &states {
            row.push(Cell::Num(obs.uncertainty_product(profile, t).map_err(io_err)?));
        }
        table.push(row);
    }
    Ok(table)
}

/// `density` / `potential` as standalone commands on the configured profile.
pub fn cmd_density_single(config: &RunConfig) -> io::Result<()> {
    let table = cmd_density(config, &config.profile)?;
    emit(&table.render(config.format), config.out.as_deref())
}

pub fn cmd_potential_single(config: &RunConfig) -> io::Result<()> {
    let table = cmd_potential(config, &config.profile)?;
    emit(&table.render(config.format), config.out.as_deref())
}

/// Sanity helper shared by tests: the q-map stays within the box for
/// every grid point a command evaluates.
#[allow(dead_code)]
pub fn map_in_range(config: &RunConfig, t: f64, x: f64) -> bool {
    coordinate_map(x, t, &config.profile)
        .map(|q| q.abs() <= std::f64::consts::FRAC_PI_2)
        .unwrap_or(false)
}

pub fn figure_stem_tags(config: &RunConfig) -> Vec<String> {
    config
        .figure_panels()
        .iter()
        .map(|(tag, _)| tag.to_string())
        .collect()
}

#[allow(dead_code)]
pub fn profile_label(profile: &BoundaryProfile) -> &'static str {
    profile_tag(profile)
}
