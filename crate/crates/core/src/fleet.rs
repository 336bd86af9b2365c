//! Leader-follower platoon kinematics and connectivity traces.
//!
//! Vehicles move along +x inside one lane of the highway. Followers run a
//! proportional spacing controller on the gap to the vehicle ahead:
//! `v <- clamp(v + kp (gap - spacing) dt, 0, limit)`.

use rayon::prelude::*;

use crate::coverage::{best_server, Node};
use crate::error::{Error, Result};
use crate::fading::outage_from_db;
use crate::geometry::{Highway3D, Point3};

pub const DEFAULT_KP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vehicle {
    pub id: usize,
    pub position: Point3,
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Platoon {
    pub leader: Vehicle,
    /// Front to back.
    pub followers: Vec<Vehicle>,
    pub lane: usize,
    /// Target gap between consecutive vehicles, meters.
    pub spacing: f64,
    pub speed_limit: f64,
    /// Spacing-controller gain, 1/s.
    pub kp: f64,
}

impl Platoon {
    /// Leader at `leader_pos` with `n_followers` trailing at exactly
    /// `spacing`, everyone at `speed`. Ids run 0 (leader) to `n_followers`.
    pub fn in_formation(
        leader_pos: Point3,
        speed: f64,
        n_followers: usize,
        spacing: f64,
        lane: usize,
        speed_limit: f64,
    ) -> Self {
        let followers = (1..=n_followers)
            .map(|i| Vehicle {
                id: i,
                position: Point3::new(
                    leader_pos.x - i as f64 * spacing,
                    leader_pos.y,
                    leader_pos.z,
                ),
                speed,
            })
            .collect();
        Self {
            leader: Vehicle {
                id: 0,
                position: leader_pos,
                speed,
            },
            followers,
            lane,
            spacing,
            speed_limit,
            kp: DEFAULT_KP,
        }
    }

    pub fn vehicles(&self) -> impl Iterator<Item = &Vehicle> {
        std::iter::once(&self.leader).chain(self.followers.iter())
    }

    pub fn len(&self) -> usize {
        1 + self.followers.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidState(m));
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return bad(format!("spacing must be positive, got {}", self.spacing));
        }
        if !(self.speed_limit > 0.0 && self.speed_limit.is_finite()) {
            return bad(format!(
                "speed limit must be positive, got {}",
                self.speed_limit
            ));
        }
        if !(self.kp >= 0.0 && self.kp.is_finite()) {
            return bad(format!(
                "controller gain must be non-negative, got {}",
                self.kp
            ));
        }
        let mut ahead: Option<&Vehicle> = None;
        for v in self.vehicles() {
            if !v.position.is_finite() {
                return bad(format!("vehicle {} has a non-finite position", v.id));
            }
            if !(0.0..=self.speed_limit).contains(&v.speed) {
                return bad(format!(
                    "vehicle {} speed {} outside [0, {}]",
                    v.id, v.speed, self.speed_limit
                ));
            }
            if let Some(a) = ahead {
                if v.position.x > a.position.x {
                    return bad(format!("vehicle {} is ahead of vehicle {}", v.id, a.id));
                }
                if v.id == a.id {
                    return bad(format!("duplicate vehicle id {}", v.id));
                }
            }
            ahead = Some(v);
        }
        Ok(())
    }

    /// Removes a follower; the vehicle behind closes the gap through the
    /// controller.
    pub fn detach(&mut self, id: usize) -> Result<Vehicle> {
        let idx = self
            .followers
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::InvalidInput(format!("no follower with id {id}")))?;
        Ok(self.followers.remove(idx))
    }

    /// Appends a vehicle one spacing behind the tail at the tail's speed.
    pub fn attach(&mut self, id: usize) -> Result<()> {
        if self.vehicles().any(|v| v.id == id) {
            return Err(Error::InvalidInput(format!(
                "vehicle {id} already in platoon"
            )));
        }
        let tail = *self.followers.last().unwrap_or(&self.leader);
        self.followers.push(Vehicle {
            id,
            position: Point3::new(
                tail.position.x - self.spacing,
                tail.position.y,
                tail.position.z,
            ),
            speed: tail.speed,
        });
        Ok(())
    }
}

/// Advances the platoon by `dt` seconds. Followers react to the gaps at the
/// start of the step and never pass the vehicle ahead.
pub fn step_platoon(p: &Platoon, dt: f64) -> Result<Platoon> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "time step must be positive, got {dt}"
        )));
    }
    p.check()?;
    let mut next = p.clone();
    let limit = p.speed_limit;

    next.leader.speed = p.leader.speed.min(limit);
    next.leader.position.x += next.leader.speed * dt;

    let mut ahead_old = p.leader.position.x;
    let mut ahead_new = next.leader.position.x;
    for (old, new) in p.followers.iter().zip(next.followers.iter_mut()) {
        let gap = ahead_old - old.position.x;
        let mut v = (old.speed + p.kp * (gap - p.spacing) * dt).clamp(0.0, limit);
        let mut x = old.position.x + v * dt;
        if x > ahead_new {
            x = ahead_new;
            v = (x - old.position.x) / dt;
        }
        new.speed = v;
        new.position.x = x;
        ahead_old = old.position.x;
        ahead_new = x;
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipChange {
    Leave(usize),
    Join(usize),
}

/// Membership change applied once the leader reaches `at_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipEvent {
    pub at_x: f64,
    pub change: MembershipChange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraversalConfig {
    pub k_db: f64,
    pub rate: f64,
    pub dt: f64,
    pub duration: f64,
    pub events: Vec<MembershipEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: f64,
    pub vehicle_id: usize,
    pub position: Point3,
    pub serving_id: usize,
    pub mean_snr_db: f64,
    pub outage: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndReason {
    Completed,
    /// A vehicle left the highway box at time `t`; that step is not recorded.
    ExitedHighway {
        t: f64,
        vehicle_id: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityTrace {
    pub dt: f64,
    pub records: Vec<TraceRecord>,
    pub end: EndReason,
}

impl ConnectivityTrace {
    pub fn vehicle_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.records.iter().map(|r| r.vehicle_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn serving_sequence(&self, vehicle_id: usize) -> Vec<usize> {
        self.records
            .iter()
            .filter(|r| r.vehicle_id == vehicle_id)
            .map(|r| r.serving_id)
            .collect()
    }
}

/// Flies the platoon through the highway for `duration` seconds, recording
/// for every vehicle at every step the max-SNR serving node (ties to the
/// lowest id), its mean SNR and the outage probability.
pub fn run_traversal(
    network: &[Node],
    hw: &Highway3D,
    platoon: &Platoon,
    cfg: &TraversalConfig,
) -> Result<ConnectivityTrace> {
    if network.is_empty() {
        return Err(Error::InvalidInput("network has no nodes".into()));
    }
    if !(cfg.dt > 0.0 && cfg.dt.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "time step must be positive, got {}",
            cfg.dt
        )));
    }
    if !(cfg.duration >= cfg.dt) {
        return Err(Error::InvalidInput(format!(
            "duration {} s shorter than the time step {} s",
            cfg.duration, cfg.dt
        )));
    }
    platoon.check()?;
    if let Some(v) = platoon.vehicles().find(|v| !hw.contains(v.position)) {
        return Err(Error::InvalidInput(format!(
            "vehicle {} starts outside the highway",
            v.id
        )));
    }

    let steps = (cfg.duration / cfg.dt + 1e-9).floor() as usize;
    let mut events = cfg.events.clone();
    events.sort_by(|a, b| a.at_x.total_cmp(&b.at_x));
    let mut events = events.into_iter().peekable();

    let mut p = platoon.clone();
    let mut records = Vec::with_capacity(steps * p.len());
    let mut end = EndReason::Completed;
    for s in 1..=steps {
        let t = s as f64 * cfg.dt;
        p = step_platoon(&p, cfg.dt)?;
        while let Some(e) = events.next_if(|e| p.leader.position.x >= e.at_x) {
            match e.change {
                MembershipChange::Leave(id) => {
                    p.detach(id)?;
                }
                MembershipChange::Join(id) => p.attach(id)?,
            }
        }
        if let Some(v) = p.vehicles().find(|v| !hw.contains(v.position)) {
            end = EndReason::ExitedHighway {
                t,
                vehicle_id: v.id,
            };
            break;
        }
        let vehicles: Vec<Vehicle> = p.vehicles().copied().collect();
        let step_records = vehicles
            .par_iter()
            .map(|v| {
                let (serving_id, link) = best_server(network, v.position)?;
                Ok(TraceRecord {
                    t,
                    vehicle_id: v.id,
                    position: v.position,
                    serving_id,
                    mean_snr_db: link.mean_snr_db,
                    outage: outage_from_db(link.mean_snr_db, cfg.k_db, cfg.rate)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        records.extend(step_records);
    }
    Ok(ConnectivityTrace {
        dt: cfg.dt,
        records,
        end,
    })
}

/// Number of serving-node changes between consecutive records of a vehicle.
pub fn handoff_count(trace: &ConnectivityTrace, vehicle_id: usize) -> Result<usize> {
    let seq = trace.serving_sequence(vehicle_id);
    if seq.is_empty() {
        return Err(Error::InvalidInput(format!(
            "vehicle {vehicle_id} does not appear in the trace"
        )));
    }
    Ok(seq.windows(2).filter(|w| w[0] != w[1]).count())
}
