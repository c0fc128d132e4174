//! Multi-frame point cloud stitching: static/dynamic separation, aggregation
//! across a sequence, and fusion into a chosen keyframe's LiDAR frame.
//!
//! Points from movable objects are carved out of each scan by their 3D boxes
//! and accumulated in box-local coordinates so that a moving car's partial
//! views line up; everything else is accumulated in world coordinates. A
//! fused cloud is then assembled for any keyframe by re-placing each object
//! at its pose for that frame and mapping the whole set into that frame's
//! LiDAR coordinates.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{chain_to_world, pose_compose, pose_inverse, FrameId, PoseSE3, Vec3};

/// Extra slack when testing box membership; boundary LiDAR returns straddle
/// the box surface.
pub const SPLIT_MARGIN: f64 = 0.05;

/// Points plus one semantic tag per point, all in one coordinate frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCloud {
    pub points: Vec<Vec3>,
    pub labels: Vec<u8>,
    pub frame: FrameId,
}

impl LabeledCloud {
    pub fn empty(frame: FrameId) -> Self {
        LabeledCloud { points: Vec::new(), labels: Vec::new(), frame }
    }

    pub fn new(points: Vec<Vec3>, labels: Vec<u8>, frame: FrameId) -> Self {
        assert_eq!(points.len(), labels.len(), "points and labels must pair up");
        LabeledCloud { points, labels, frame }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn push(&mut self, p: Vec3, label: u8) {
        self.points.push(p);
        self.labels.push(label);
    }
}

/// An annotated object box at one instant: pose maps box-local coordinates
/// into the frame the box is expressed in.
#[derive(Debug, Clone)]
pub struct ObjectBox {
    pub object_index: usize,
    pub half_extents: Vec3,
    pub pose: PoseSE3,
}

impl ObjectBox {
    /// Boundary-inclusive membership with the split margin applied.
    fn contains(&self, p: Vec3) -> bool {
        let local = pose_inverse(&self.pose).apply(p);
        local.x.abs() <= self.half_extents.x + SPLIT_MARGIN
            && local.y.abs() <= self.half_extents.y + SPLIT_MARGIN
            && local.z.abs() <= self.half_extents.z + SPLIT_MARGIN
    }
}

/// One scan split into its static remainder and per-object parts.
#[derive(Debug, Clone)]
pub struct FrameSegments {
    pub static_part: LabeledCloud,
    pub dynamic_parts: BTreeMap<usize, LabeledCloud>,
}

/// Assign every point to the first box (by object index) containing it;
/// everything else is static. Boxes must be expressed in the scan's frame.
pub fn split_static_dynamic(scan: &LabeledCloud, boxes: &[ObjectBox]) -> FrameSegments {
    let mut ordered: Vec<&ObjectBox> = boxes.iter().collect();
    ordered.sort_by_key(|b| b.object_index);

    let mut static_part = LabeledCloud::empty(scan.frame.clone());
    let mut dynamic_parts: BTreeMap<usize, LabeledCloud> = BTreeMap::new();
    for (&p, &label) in scan.points.iter().zip(&scan.labels) {
        match ordered.iter().find(|b| b.contains(p)) {
            Some(b) => dynamic_parts
                .entry(b.object_index)
                .or_insert_with(|| LabeledCloud::empty(scan.frame.clone()))
                .push(p, label),
            None => static_part.push(p, label),
        }
    }
    FrameSegments { static_part, dynamic_parts }
}

/// One frame's contribution to the aggregation.
#[derive(Debug, Clone)]
pub struct FrameObservation {
    /// Scan in the LiDAR sensor frame at scan time.
    pub scan: LabeledCloud,
    pub sensor_to_ego: PoseSE3,
    pub ego_to_world: PoseSE3,
    /// Object boxes with world-frame poses at scan time.
    pub boxes: Vec<ObjectBox>,
}

/// A moving object's accumulated cloud in its box-local frame.
#[derive(Debug, Clone)]
pub struct ObjectCloud {
    pub canonical: LabeledCloud,
    pub half_extents: Vec3,
}

/// Everything a sequence contributes: the static world cloud plus each
/// object's canonical cloud.
#[derive(Debug, Clone)]
pub struct AggregatedScene {
    pub static_world: LabeledCloud,
    pub objects: BTreeMap<usize, ObjectCloud>,
}

/// Split every frame, transform static points sensor -> ego -> world, and
/// accumulate object points in box-local coordinates using each frame's own
/// box pose.
pub fn aggregate_sequence(frames: &[FrameObservation]) -> Result<AggregatedScene> {
    if frames.is_empty() {
        return Err(Error::InvalidConfig("aggregate_sequence needs at least one frame".into()));
    }
    let mut static_world = LabeledCloud::empty(FrameId::World);
    let mut objects: BTreeMap<usize, ObjectCloud> = BTreeMap::new();

    for frame in frames {
        let sensor_to_world = chain_to_world(&frame.sensor_to_ego, &frame.ego_to_world);
        let world_scan = LabeledCloud::new(
            frame.scan.points.iter().map(|&p| sensor_to_world.apply(p)).collect(),
            frame.scan.labels.clone(),
            FrameId::World,
        );
        let segments = split_static_dynamic(&world_scan, &frame.boxes);

        static_world.points.extend_from_slice(&segments.static_part.points);
        static_world.labels.extend_from_slice(&segments.static_part.labels);

        for (index, part) in segments.dynamic_parts {
            let b = frame
                .boxes
                .iter()
                .find(|b| b.object_index == index)
                .ok_or(Error::MissingBoxPose(index))?;
            let world_to_local = pose_inverse(&b.pose);
            let entry = objects.entry(index).or_insert_with(|| ObjectCloud {
                canonical: LabeledCloud::empty(FrameId::BoxLocal(index)),
                half_extents: b.half_extents,
            });
            for (&p, &label) in part.points.iter().zip(&part.labels) {
                entry.canonical.push(world_to_local.apply(p), label);
            }
        }
    }
    Ok(AggregatedScene { static_world, objects })
}

/// The target frame of a fusion: a keyframe's LiDAR pose chain plus the
/// world-frame box pose of every object present at that time.
#[derive(Debug, Clone)]
pub struct KeyFramePose {
    pub ego_to_world: PoseSE3,
    pub sensor_to_ego: PoseSE3,
    pub box_poses: BTreeMap<usize, PoseSE3>,
}

/// Express the aggregate in the key frame's LiDAR coordinates. Objects with
/// no key-time pose are dropped.
pub fn fuse_to_frame(agg: &AggregatedScene, key: &KeyFramePose, frame: FrameId) -> LabeledCloud {
    let sensor_to_world = chain_to_world(&key.sensor_to_ego, &key.ego_to_world);
    let world_to_key = pose_inverse(&sensor_to_world);

    let mut out = LabeledCloud::empty(frame);
    out.points.reserve(agg.static_world.len());
    for (&p, &label) in agg.static_world.points.iter().zip(&agg.static_world.labels) {
        out.push(world_to_key.apply(p), label);
    }
    for (index, obj) in &agg.objects {
        let Some(pose) = key.box_poses.get(index) else { continue };
        let local_to_key = pose_compose(&world_to_key, pose);
        for (&p, &label) in obj.canonical.points.iter().zip(&obj.canonical.labels) {
            out.push(local_to_key.apply(p), label);
        }
    }
    out
}
