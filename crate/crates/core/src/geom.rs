//! Coordinate conventions, rotations and rigid transforms.
//!
//! Everything in this crate uses a single convention: x forward, y right,
//! z up, left-handed, angles in degrees at API boundaries and radians
//! internally. Yaw rotates x toward y. A full orientation is composed as
//! `R = R3(roll) * R2(pitch) * R1(yaw)` where R1, R2, R3 are the axis
//! rotations about z, y and x respectively.
//!
//! Transform chains run sensor -> ego -> world; a sensor pose can never be
//! converted to world coordinates without going through the ego frame.

use serde::{Deserialize, Serialize};

/// A point or direction in 3D space, components in meters (or unitless for
/// directions).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn scaled(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Euler angles in degrees, applied roll about x, pitch about y, yaw about z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationRPY {
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl RotationRPY {
    pub fn new(roll: f64, pitch: f64, yaw: f64) -> Self {
        RotationRPY { roll, pitch, yaw }
    }

    pub fn yaw_only(yaw: f64) -> Self {
        RotationRPY { roll: 0.0, pitch: 0.0, yaw }
    }

    /// Same orientation with every angle normalized into [-180, 180].
    pub fn normalized(self) -> Self {
        RotationRPY {
            roll: normalize_angle_deg(self.roll),
            pitch: normalize_angle_deg(self.pitch),
            yaw: normalize_angle_deg(self.yaw),
        }
    }
}

/// Wrap an angle in degrees into [-180, 180].
pub fn normalize_angle_deg(a: f64) -> f64 {
    let mut r = a % 360.0;
    if r > 180.0 {
        r -= 360.0;
    } else if r < -180.0 {
        r += 360.0;
    }
    r
}

/// 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3 {
    pub m: [f64; 9],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 { m: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0] };

    pub fn new(m: [f64; 9]) -> Self {
        Mat3 { m }
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.m[row * 3 + col]
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z,
        )
    }

    pub fn mul_mat(&self, o: &Mat3) -> Mat3 {
        let mut r = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                r[i * 3 + j] = (0..3).map(|k| self.at(i, k) * o.at(k, j)).sum();
            }
        }
        Mat3::new(r)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.m;
        Mat3::new([m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6])
    }

    /// Max absolute entry of `R^T R - I`; 0 for a perfectly orthonormal matrix.
    pub fn orthonormality_error(&self) -> f64 {
        let p = self.transpose().mul_mat(self);
        let mut e: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                e = e.max((p.at(i, j) - want).abs());
            }
        }
        e
    }
}

/// Rotation about z by `yaw`; rotates x toward y.
fn rot_z(yaw_rad: f64) -> Mat3 {
    let (s, c) = yaw_rad.sin_cos();
    Mat3::new([c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

/// Rotation about y by `pitch`; rotates x toward z.
fn rot_y(pitch_rad: f64) -> Mat3 {
    let (s, c) = pitch_rad.sin_cos();
    Mat3::new([c, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, c])
}

/// Rotation about x by `roll`; rotates y toward z.
fn rot_x(roll_rad: f64) -> Mat3 {
    let (s, c) = roll_rad.sin_cos();
    Mat3::new([1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c])
}

/// Build the rotation matrix `R3(roll) * R2(pitch) * R1(yaw)`.
///
/// R1/R2/R3 are the axis rotations about z, y, x; the product is formed by
/// multiplying them from right to left. Output is orthonormal with
/// determinant +1.
pub fn rotation_from_rpy(rpy: RotationRPY) -> Mat3 {
    let rpy = rpy.normalized();
    let r1 = rot_z(rpy.yaw.to_radians());
    let r2 = rot_y(rpy.pitch.to_radians());
    let r3 = rot_x(rpy.roll.to_radians());
    r3.mul_mat(&r2).mul_mat(&r1)
}

/// Rigid transform: rotation followed by translation, `p' = R p + T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoseSE3 {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl PoseSE3 {
    pub const IDENTITY: PoseSE3 = PoseSE3 { rotation: Mat3::IDENTITY, translation: Vec3::ZERO };

    pub fn new(rotation: Mat3, translation: Vec3) -> Self {
        PoseSE3 { rotation, translation }
    }

    pub fn from_rpy(rpy: RotationRPY, translation: Vec3) -> Self {
        PoseSE3 { rotation: rotation_from_rpy(rpy), translation }
    }

    pub fn from_translation(translation: Vec3) -> Self {
        PoseSE3 { rotation: Mat3::IDENTITY, translation }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation.mul_vec(p) + self.translation
    }

    /// Rotate a direction without translating it.
    pub fn apply_dir(&self, d: Vec3) -> Vec3 {
        self.rotation.mul_vec(d)
    }
}

/// `(a ∘ b)(p) = a(b(p))`.
pub fn pose_compose(a: &PoseSE3, b: &PoseSE3) -> PoseSE3 {
    PoseSE3 {
        rotation: a.rotation.mul_mat(&b.rotation),
        translation: a.rotation.mul_vec(b.translation) + a.translation,
    }
}

/// Inverse transform; requires an orthonormal rotation.
pub fn pose_inverse(p: &PoseSE3) -> PoseSE3 {
    let rt = p.rotation.transpose();
    PoseSE3 { rotation: rt, translation: -rt.mul_vec(p.translation) }
}

/// Apply a pose to a sequence of points.
pub fn transform_points(p: &PoseSE3, pts: &[Vec3]) -> Vec<Vec3> {
    pts.iter().map(|&q| p.apply(q)).collect()
}

/// Compose the sensor->ego and ego->world transforms into sensor->world.
pub fn chain_to_world(sensor_pose_in_ego: &PoseSE3, ego_pose_in_world: &PoseSE3) -> PoseSE3 {
    pose_compose(ego_pose_in_world, sensor_pose_in_ego)
}

/// Unit quaternion as (w, x, y, z), the serialization format for rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion { w: a[0], x: a[1], y: a[2], z: a[3] }
    }
}

/// Convert a rotation matrix to a unit quaternion (Shepperd's method).
pub fn quaternion_from_matrix(r: &Mat3) -> Quaternion {
    let m = &r.m;
    let trace = m[0] + m[4] + m[8];
    let (w, x, y, z);
    if trace > 0.0 {
        let s = (trace + 1.0).sqrt() * 2.0;
        w = 0.25 * s;
        x = (m[7] - m[5]) / s;
        y = (m[2] - m[6]) / s;
        z = (m[3] - m[1]) / s;
    } else if m[0] > m[4] && m[0] > m[8] {
        let s = (1.0 + m[0] - m[4] - m[8]).sqrt() * 2.0;
        w = (m[7] - m[5]) / s;
        x = 0.25 * s;
        y = (m[1] + m[3]) / s;
        z = (m[2] + m[6]) / s;
    } else if m[4] > m[8] {
        let s = (1.0 + m[4] - m[0] - m[8]).sqrt() * 2.0;
        w = (m[2] - m[6]) / s;
        x = (m[1] + m[3]) / s;
        y = 0.25 * s;
        z = (m[5] + m[7]) / s;
    } else {
        let s = (1.0 + m[8] - m[0] - m[4]).sqrt() * 2.0;
        w = (m[3] - m[1]) / s;
        x = (m[2] + m[6]) / s;
        y = (m[5] + m[7]) / s;
        z = 0.25 * s;
    }
    Quaternion { w, x, y, z }
}

/// Convert a unit quaternion back to a rotation matrix.
pub fn matrix_from_quaternion(q: &Quaternion) -> Mat3 {
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    Mat3::new([
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    ])
}

/// Identifies which coordinate system a quantity lives in.
///
/// Poses compose only along the sensor -> ego -> world chain; keyframe LiDAR
/// frames are reached back from world through the keyframe's chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameId {
    /// A named sensor's own frame.
    Sensor(String),
    /// The acquisition vehicle frame.
    Ego,
    /// The fixed world frame.
    World,
    /// The LiDAR frame of the keyframe with the given sample token.
    KeyframeLidar(String),
    /// Canonical box-local frame of an aggregated object.
    BoxLocal(usize),
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn assert_vec_close(a: Vec3, b: Vec3, eps: f64) {
        assert_abs_diff_eq!(a.x, b.x, epsilon = eps);
        assert_abs_diff_eq!(a.y, b.y, epsilon = eps);
        assert_abs_diff_eq!(a.z, b.z, epsilon = eps);
    }

    /// Independent axis-angle rotation (Rodrigues) used as the oracle for the
    /// axis rotations that rotation_from_rpy is built from.
    fn rodrigues(axis: Vec3, angle_rad: f64, v: Vec3) -> Vec3 {
        let k = axis.normalized();
        let (s, c) = angle_rad.sin_cos();
        v.scaled(c) + k.cross(v).scaled(s) + k.scaled(k.dot(v) * (1.0 - c))
    }

    #[test]
    fn rpy_identity() {
        let r = rotation_from_rpy(RotationRPY::new(0.0, 0.0, 0.0));
        assert_eq!(r, Mat3::IDENTITY);
    }

    #[test]
    fn yaw_180_flips_x_and_y() {
        let r = rotation_from_rpy(RotationRPY::yaw_only(180.0));
        assert_vec_close(r.mul_vec(Vec3::new(1.0, 0.0, 0.0)), Vec3::new(-1.0, 0.0, 0.0), 1e-12);
        assert_vec_close(r.mul_vec(Vec3::new(0.0, 1.0, 0.0)), Vec3::new(0.0, -1.0, 0.0), 1e-12);
    }

    #[test]
    fn yaw_90_rotates_x_toward_y() {
        let r = rotation_from_rpy(RotationRPY::yaw_only(90.0));
        let got = r.mul_vec(Vec3::new(1.0, 0.0, 0.0));
        // Oracle: evaluate the axis-rotation formula directly.
        let want = rodrigues(Vec3::new(0.0, 0.0, 1.0), 90f64.to_radians(), Vec3::new(1.0, 0.0, 0.0));
        assert_vec_close(got, want, 1e-12);
        assert_vec_close(got, Vec3::new(0.0, 1.0, 0.0), 1e-12);
    }

    #[test]
    fn rpy_matches_axis_rotation_oracle() {
        // R3(roll) R2(pitch) R1(yaw) applied to v must equal applying the
        // three Rodrigues rotations right to left.
        let rpy = RotationRPY::new(20.0, -35.0, 110.0);
        let r = rotation_from_rpy(rpy);
        let v = Vec3::new(0.3, -1.2, 0.7);
        let s1 = rodrigues(Vec3::new(0.0, 0.0, 1.0), rpy.yaw.to_radians(), v);
        let s2 = rodrigues(Vec3::new(0.0, 1.0, 0.0), rpy.pitch.to_radians(), s1);
        let s3 = rodrigues(Vec3::new(1.0, 0.0, 0.0), rpy.roll.to_radians(), s2);
        assert_vec_close(r.mul_vec(v), s3, 1e-12);
    }

    #[test]
    fn compose_identity_and_translations() {
        let p = PoseSE3::from_rpy(RotationRPY::new(10.0, 20.0, 30.0), Vec3::new(1.0, 2.0, 3.0));
        let id = PoseSE3::IDENTITY;
        assert_eq!(pose_compose(&id, &p), p);

        let a = PoseSE3::from_translation(Vec3::new(1.0, 0.0, 0.0));
        let b = PoseSE3::from_translation(Vec3::new(0.0, 2.0, 0.0));
        assert_eq!(pose_compose(&a, &b).translation, Vec3::new(1.0, 2.0, 0.0));
    }

    #[test]
    fn inverse_of_pure_translation() {
        let p = PoseSE3::from_translation(Vec3::new(3.0, -4.0, 5.0));
        let inv = pose_inverse(&p);
        assert_eq!(inv.translation, Vec3::new(-3.0, 4.0, -5.0));
        assert_eq!(pose_inverse(&PoseSE3::IDENTITY), PoseSE3::IDENTITY);
    }

    #[test]
    fn transform_points_pure_translation() {
        let p = PoseSE3::from_translation(Vec3::new(10.0, 5.0, 0.0));
        let out = transform_points(&p, &[Vec3::new(0.0, 0.0, 2.0)]);
        assert_eq!(out[0], Vec3::new(10.0, 5.0, 2.0));
    }

    #[test]
    fn transform_points_yaw_90() {
        let p = PoseSE3::from_rpy(RotationRPY::yaw_only(90.0), Vec3::new(1.0, 1.0, 1.0));
        let out = transform_points(&p, &[Vec3::new(1.0, 0.0, 0.0)]);
        assert_vec_close(out[0], Vec3::new(1.0, 2.0, 1.0), 1e-12);
    }

    #[test]
    fn chain_sensor_above_ego() {
        let sensor = PoseSE3::from_translation(Vec3::new(0.0, 0.0, 2.0));
        let ego = PoseSE3::from_translation(Vec3::new(3.0, 0.0, 0.0));
        let chained = chain_to_world(&sensor, &ego);
        assert_eq!(chained.apply(Vec3::ZERO), Vec3::new(3.0, 0.0, 2.0));
        assert_eq!(chain_to_world(&PoseSE3::IDENTITY, &PoseSE3::IDENTITY), PoseSE3::IDENTITY);
    }

    fn arb_rpy() -> impl Strategy<Value = RotationRPY> {
        (-180.0..180.0f64, -180.0..180.0f64, -180.0..180.0f64)
            .prop_map(|(r, p, y)| RotationRPY::new(r, p, y))
    }

    fn arb_pose() -> impl Strategy<Value = PoseSE3> {
        (arb_rpy(), -50.0..50.0f64, -50.0..50.0f64, -50.0..50.0f64)
            .prop_map(|(rpy, x, y, z)| PoseSE3::from_rpy(rpy, Vec3::new(x, y, z)))
    }

    fn arb_point() -> impl Strategy<Value = Vec3> {
        (-100.0..100.0f64, -100.0..100.0f64, -100.0..100.0f64)
            .prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn rotation_is_orthonormal(rpy in arb_rpy()) {
            let r = rotation_from_rpy(rpy);
            prop_assert!(r.orthonormality_error() < 1e-9);
            prop_assert!((r.det() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn pose_round_trip(p in arb_pose(), q in arb_point()) {
            let back = pose_inverse(&p).apply(p.apply(q));
            prop_assert!((back - q).norm() < 1e-9);
        }

        #[test]
        fn chain_matches_two_step(a in arb_pose(), b in arb_pose(), q in arb_point()) {
            let chained = chain_to_world(&a, &b).apply(q);
            let two_step = b.apply(a.apply(q));
            prop_assert!((chained - two_step).norm() < 1e-9);
        }

        #[test]
        fn compose_associative(a in arb_pose(), b in arb_pose(), c in arb_pose(), q in arb_point()) {
            let left = pose_compose(&pose_compose(&a, &b), &c).apply(q);
            let right = pose_compose(&a, &pose_compose(&b, &c)).apply(q);
            prop_assert!((left - right).norm() < 1e-9);
        }

        #[test]
        fn quaternion_round_trip(rpy in arb_rpy()) {
            let r = rotation_from_rpy(rpy);
            let q = quaternion_from_matrix(&r);
            prop_assert!((q.norm() - 1.0).abs() < 1e-12);
            let back = matrix_from_quaternion(&q);
            for i in 0..9 {
                prop_assert!((back.m[i] - r.m[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inverse_round_trip_100_points() {
        let p = PoseSE3::from_rpy(RotationRPY::new(31.0, -7.0, 143.0), Vec3::new(4.2, -9.1, 0.5));
        let inv = pose_inverse(&p);
        for i in 0..100 {
            let q = Vec3::new(i as f64 * 0.37 - 18.0, (i as f64 * 0.91).sin() * 20.0, i as f64 % 7.0);
            let back = inv.apply(p.apply(q));
            assert!((back - q).norm() < 1e-9);
        }
    }
}
