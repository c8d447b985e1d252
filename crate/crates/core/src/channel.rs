//! Geometry, large-scale path loss, frequency-selective small-scale fading
//! and RSRP measurements.
//!
//! The propagation model is deliberately small: a UMi-style closed-form path
//! loss, an exponential power-delay profile turned into a per-subcarrier
//! response, and long-term gains that calibrate the fading energy. Everything
//! downstream (detection, precoding, the ICIC loop) consumes the [`Csi`]
//! tensor produced here.

use ndarray::Array3;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, tag};

/// Radio head: position, antenna count, owning EDU and transmit power.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Rru {
    pub position: [f64; 2],
    pub n_antennas: usize,
    pub edu_id: usize,
    pub tx_power_dbm: f64,
}

/// User terminal with a fixed serving RRU (no handover is modeled).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ue {
    pub position: [f64; 2],
    pub n_antennas: usize,
    pub serving_cell: usize,
    pub tx_power_dbm: f64,
}

/// Deployment geometry plus the carrier/PRB grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Topology {
    pub rrus: Vec<Rru>,
    pub ues: Vec<Ue>,
    pub carrier_freq_hz: f64,
    pub bandwidth_hz: f64,
    pub n_subcarriers: usize,
    pub n_prbs: usize,
}

impl Topology {
    pub fn validate(&self) -> Result<()> {
        if self.rrus.is_empty() || self.ues.is_empty() {
            return Err(Error::InvalidTopology("need at least one RRU and one UE".into()));
        }
        for (i, r) in self.rrus.iter().enumerate() {
            if !r.position.iter().all(|p| p.is_finite()) {
                return Err(Error::InvalidTopology(format!("RRU {i} position not finite")));
            }
            if r.n_antennas == 0 {
                return Err(Error::InvalidTopology(format!("RRU {i} has zero antennas")));
            }
        }
        for (i, u) in self.ues.iter().enumerate() {
            if !u.position.iter().all(|p| p.is_finite()) {
                return Err(Error::InvalidTopology(format!("UE {i} position not finite")));
            }
            if u.n_antennas == 0 {
                return Err(Error::InvalidTopology(format!("UE {i} has zero antennas")));
            }
            if u.serving_cell >= self.rrus.len() {
                return Err(Error::InvalidTopology(format!(
                    "UE {i} serving cell {} out of range",
                    u.serving_cell
                )));
            }
        }
        if !(self.carrier_freq_hz > 0.0 && self.bandwidth_hz > 0.0) {
            return Err(Error::InvalidTopology("carrier and bandwidth must be positive".into()));
        }
        if self.n_prbs == 0 || self.n_subcarriers == 0 || self.n_subcarriers % self.n_prbs != 0 {
            return Err(Error::InvalidTopology(format!(
                "n_subcarriers {} must be a positive multiple of n_prbs {}",
                self.n_subcarriers, self.n_prbs
            )));
        }
        Ok(())
    }

    pub fn n_rru_antennas(&self) -> usize {
        self.rrus.iter().map(|r| r.n_antennas).sum()
    }

    pub fn n_ue_antennas(&self) -> usize {
        self.ues.iter().map(|u| u.n_antennas).sum()
    }

    /// First antenna row index of each RRU in the stacked CSI tensor.
    pub fn rru_antenna_offsets(&self) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.rrus.len());
        let mut acc = 0;
        for r in &self.rrus {
            offs.push(acc);
            acc += r.n_antennas;
        }
        offs
    }

    /// First antenna column index of each UE in the stacked CSI tensor.
    pub fn ue_antenna_offsets(&self) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.ues.len());
        let mut acc = 0;
        for u in &self.ues {
            offs.push(acc);
            acc += u.n_antennas;
        }
        offs
    }

    pub fn distance(&self, rru: usize, ue: usize) -> f64 {
        let r = &self.rrus[rru].position;
        let u = &self.ues[ue].position;
        ((r[0] - u[0]).powi(2) + (r[1] - u[1]).powi(2)).sqrt()
    }

    /// Subcarrier spacing implied by the grid.
    pub fn subcarrier_spacing_hz(&self) -> f64 {
        self.bandwidth_hz / self.n_subcarriers as f64
    }

    /// PRB bandwidth implied by the grid.
    pub fn prb_bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz / self.n_prbs as f64
    }

    /// Representative tone of a PRB (center subcarrier of its block).
    pub fn prb_tone(&self, prb: usize) -> usize {
        let per = self.n_subcarriers / self.n_prbs;
        prb * per + per / 2
    }
}

/// Tapped-delay fading description with an exponential power-delay profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FadingProfile {
    pub n_taps: usize,
    /// Decay constant of the tap powers, `p_l ~ exp(-l / delay_decay)`.
    pub delay_decay: f64,
    /// Base seed folded into every realization drawn with this profile.
    pub seed: u64,
}

impl Default for FadingProfile {
    fn default() -> Self {
        Self { n_taps: 4, delay_decay: 1.0, seed: 0 }
    }
}

impl FadingProfile {
    /// Tap powers, normalized to sum to one.
    pub fn tap_powers(&self) -> Vec<f64> {
        let raw: Vec<f64> = (0..self.n_taps)
            .map(|l| (-(l as f64) / self.delay_decay).exp())
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|p| p / total).collect()
    }
}

/// Channel state: per-antenna-pair per-subcarrier response plus the
/// long-term power gain of every (RRU, UE) pair.
///
/// `h` is indexed `[rru_antenna][ue_antenna][subcarrier]` with antennas
/// stacked across RRUs/UEs in topology order.
#[derive(Debug, Clone)]
pub struct Csi {
    pub h: Array3<Complex64>,
    /// Linear power gain per (rru, ue) pair; `h` is scaled so that the mean
    /// per-subcarrier power of a pair equals this value in expectation.
    pub long_term_gain: Vec<Vec<f64>>,
}

impl Csi {
    /// Mean squared magnitude over the antenna pairs of `(rru, ue)` at one
    /// subcarrier. This is the per-tone power gain used for SINR accounting.
    pub fn pair_power(&self, topology: &Topology, rru: usize, ue: usize, subcarrier: usize) -> f64 {
        let ro = topology.rru_antenna_offsets()[rru];
        let uo = topology.ue_antenna_offsets()[ue];
        let (nr, nu) = (topology.rrus[rru].n_antennas, topology.ues[ue].n_antennas);
        let mut acc = 0.0;
        for m in ro..ro + nr {
            for k in uo..uo + nu {
                acc += self.h[[m, k, subcarrier]].norm_sqr();
            }
        }
        acc / (nr * nu) as f64
    }
}

/// UMi-style path loss in dB, valid from 1 m.
///
/// `PL = 32.4 + 20 log10(f_GHz) + 31.9 log10(d_m)`
pub fn path_loss_db(distance_m: f64, carrier_hz: f64) -> Result<f64> {
    if !(distance_m.is_finite() && carrier_hz.is_finite()) {
        return Err(Error::NonFinite("path_loss_db input"));
    }
    if distance_m < 1.0 {
        return Err(Error::DistanceTooSmall(distance_m));
    }
    if carrier_hz <= 0.0 {
        return Err(Error::NonPositive { what: "carrier frequency", value: carrier_hz });
    }
    let f_ghz = carrier_hz / 1e9;
    Ok(32.4 + 20.0 * f_ghz.log10() + 31.9 * distance_m.log10())
}

/// Draws a full CSI realization.
///
/// Per (RRU, UE) antenna pair, `n_taps` complex Gaussian taps with the
/// profile's exponential powers are transformed to a per-subcarrier response
/// and scaled by the pair's path gain. The draw depends only on
/// `(topology, fading, seed)`; per-pair substreams make the tensor
/// independent of iteration order.
pub fn generate_csi(topology: &Topology, fading: &FadingProfile, seed: u64) -> Result<Csi> {
    topology.validate()?;
    if fading.n_taps == 0 {
        return Err(Error::NonPositive { what: "n_taps", value: 0.0 });
    }

    let m_total = topology.n_rru_antennas();
    let k_total = topology.n_ue_antennas();
    let n_sc = topology.n_subcarriers;
    let tap_powers = fading.tap_powers();
    let base = rng::derive_seed(seed, tag::FADING, fading.seed, 0);

    let mut gains = vec![vec![0.0; topology.ues.len()]; topology.rrus.len()];
    let mut h = Array3::<Complex64>::zeros((m_total, k_total, n_sc));

    let rru_offs = topology.rru_antenna_offsets();
    let ue_offs = topology.ue_antenna_offsets();

    for (ri, rru) in topology.rrus.iter().enumerate() {
        for (ui, ue) in topology.ues.iter().enumerate() {
            let d = topology.distance(ri, ui).max(1.0);
            let pl_db = path_loss_db(d, topology.carrier_freq_hz)?;
            let gain = 10f64.powf(-pl_db / 10.0);
            gains[ri][ui] = gain;
            let amp = gain.sqrt();

            for a in 0..rru.n_antennas {
                for b in 0..ue.n_antennas {
                    let pair_index = ((rru_offs[ri] + a) * k_total + ue_offs[ui] + b) as u64;
                    let mut pair_rng = rng::stream(base, tag::FADING, pair_index, 1);
                    // One CN(0, p_l) tap per delay, then a DFT across tones.
                    let taps: Vec<Complex64> = tap_powers
                        .iter()
                        .map(|&p| {
                            let s = (p / 2.0).sqrt();
                            let re: f64 = pair_rng.sample(rand_distr::StandardNormal);
                            let im: f64 = pair_rng.sample(rand_distr::StandardNormal);
                            Complex64::new(re * s, im * s)
                        })
                        .collect();
                    for sc in 0..n_sc {
                        let mut resp = Complex64::new(0.0, 0.0);
                        for (l, t) in taps.iter().enumerate() {
                            let phase =
                                -2.0 * std::f64::consts::PI * (sc as f64) * (l as f64) / n_sc as f64;
                            resp += t * Complex64::from_polar(1.0, phase);
                        }
                        h[[rru_offs[ri] + a, ue_offs[ui] + b, sc]] = resp * amp;
                    }
                }
            }
        }
    }

    Ok(Csi { h, long_term_gain: gains })
}

/// Long-term downlink reference power of `(cell, ue)` in dBm.
pub fn rsrp_dbm(csi: &Csi, topology: &Topology, cell: usize, ue: usize) -> Result<f64> {
    if cell >= topology.rrus.len() {
        return Err(Error::IndexOutOfRange { what: "cell", index: cell, limit: topology.rrus.len() });
    }
    if ue >= topology.ues.len() {
        return Err(Error::IndexOutOfRange { what: "ue", index: ue, limit: topology.ues.len() });
    }
    let gain = csi.long_term_gain[cell][ue];
    Ok(topology.rrus[cell].tx_power_dbm + 10.0 * gain.log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_pair_topology(distance: f64, n_sc: usize) -> Topology {
        Topology {
            rrus: vec![Rru { position: [0.0, 0.0], n_antennas: 1, edu_id: 0, tx_power_dbm: 30.0 }],
            ues: vec![Ue {
                position: [distance, 0.0],
                n_antennas: 1,
                serving_cell: 0,
                tx_power_dbm: 23.0,
            }],
            carrier_freq_hz: 4.9e9,
            bandwidth_hz: 100e6,
            n_subcarriers: n_sc,
            n_prbs: n_sc,
        }
    }

    #[test]
    fn path_loss_reference_points() {
        // 32.4 + 20 log10(4.9) + 31.9 log10(d), quoted to two decimals.
        assert!((path_loss_db(1.0, 4.9e9).unwrap() - 46.20).abs() < 0.005);
        assert!((path_loss_db(10.0, 4.9e9).unwrap() - 78.10).abs() < 0.005);
        assert!((path_loss_db(100.0, 4.9e9).unwrap() - 110.00).abs() < 0.005);
    }

    #[test]
    fn path_loss_monotone_in_distance() {
        let mut last = f64::NEG_INFINITY;
        for d in [1.0, 1.5, 3.0, 10.0, 42.0, 500.0, 9999.0] {
            let pl = path_loss_db(d, 4.9e9).unwrap();
            assert!(pl > last, "PL({d}) = {pl} not increasing");
            last = pl;
        }
    }

    #[test]
    fn path_loss_rejects_below_one_meter() {
        assert!(matches!(path_loss_db(0.5, 4.9e9), Err(Error::DistanceTooSmall(_))));
    }

    #[test]
    fn single_tap_is_frequency_flat() {
        let topo = single_pair_topology(10.0, 16);
        let fading = FadingProfile { n_taps: 1, delay_decay: 1.0, seed: 0 };
        let csi = generate_csi(&topo, &fading, 3).unwrap();
        let m0 = csi.h[[0, 0, 0]].norm();
        for sc in 1..16 {
            assert!((csi.h[[0, 0, sc]].norm() - m0).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_is_bitwise_identical() {
        let topo = single_pair_topology(25.0, 8);
        let fading = FadingProfile::default();
        let a = generate_csi(&topo, &fading, 99).unwrap();
        let b = generate_csi(&topo, &fading, 99).unwrap();
        assert_eq!(a.h, b.h);
        let c = generate_csi(&topo, &fading, 100).unwrap();
        assert_ne!(a.h, c.h);
    }

    #[test]
    fn fading_energy_matches_path_gain() {
        // Monte-Carlo calibration: mean |h|^2 over tones and realizations
        // converges to the long-term gain.
        let topo = single_pair_topology(10.0, 8);
        let fading = FadingProfile { n_taps: 4, delay_decay: 1.0, seed: 0 };
        let expected = 10f64.powf(-path_loss_db(10.0, 4.9e9).unwrap() / 10.0);
        let mut acc = 0.0;
        let n = 10_000;
        for seed in 0..n {
            let csi = generate_csi(&topo, &fading, seed).unwrap();
            let per_tone: f64 =
                (0..8).map(|sc| csi.h[[0, 0, sc]].norm_sqr()).sum::<f64>() / 8.0;
            acc += per_tone;
        }
        let mean = acc / n as f64;
        assert!(
            (mean - expected).abs() / expected < 0.05,
            "mean {mean:e} vs expected {expected:e}"
        );
    }

    #[test]
    fn rsrp_is_tx_power_plus_gain() {
        let topo = single_pair_topology(10.0, 4);
        let mut csi = generate_csi(&topo, &FadingProfile::default(), 0).unwrap();
        csi.long_term_gain[0][0] = 1.0;
        assert!((rsrp_dbm(&csi, &topo, 0, 0).unwrap() - 30.0).abs() < 1e-12);

        csi.long_term_gain[0][0] = 10f64.powf(-78.1039 / 10.0);
        assert!((rsrp_dbm(&csi, &topo, 0, 0).unwrap() + 48.1039).abs() < 1e-9);
    }

    #[test]
    fn rsrp_orders_by_distance_at_equal_tx_power() {
        let topo = Topology {
            rrus: vec![
                Rru { position: [0.0, 0.0], n_antennas: 2, edu_id: 0, tx_power_dbm: 30.0 },
                Rru { position: [300.0, 0.0], n_antennas: 2, edu_id: 0, tx_power_dbm: 30.0 },
            ],
            ues: vec![Ue {
                position: [50.0, 0.0],
                n_antennas: 2,
                serving_cell: 0,
                tx_power_dbm: 23.0,
            }],
            carrier_freq_hz: 4.9e9,
            bandwidth_hz: 100e6,
            n_subcarriers: 12,
            n_prbs: 12,
        };
        let csi = generate_csi(&topo, &FadingProfile::default(), 5).unwrap();
        let close = rsrp_dbm(&csi, &topo, 0, 0).unwrap();
        let far = rsrp_dbm(&csi, &topo, 1, 0).unwrap();
        assert!(close > far);
    }

    #[test]
    fn rsrp_rejects_bad_indices() {
        let topo = single_pair_topology(10.0, 4);
        let csi = generate_csi(&topo, &FadingProfile::default(), 0).unwrap();
        assert!(rsrp_dbm(&csi, &topo, 7, 0).is_err());
        assert!(rsrp_dbm(&csi, &topo, 0, 7).is_err());
    }

    #[test]
    fn grid_must_align() {
        let mut topo = single_pair_topology(10.0, 8);
        topo.n_prbs = 3;
        assert!(topo.validate().is_err());
    }
}
