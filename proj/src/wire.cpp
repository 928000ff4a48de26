#include "fftnav/wire.hpp"

#include <algorithm>
#include <cmath>

#include "fftnav/error.hpp"

namespace fftnav::wire {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

}  // namespace

std::uint16_t angle_to_ticks(double angle) {
  const auto t = std::lround(wrap_two_pi(angle) / kAngleQuantum);
  return static_cast<std::uint16_t>(t & 0xFFFF);
}

double ticks_to_angle(std::uint16_t ticks) { return ticks * kAngleQuantum; }

std::uint16_t distance_to_fixed(double d) {
  return static_cast<std::uint16_t>(std::lround(std::clamp(d, 0.0, 1.0) * 65535.0));
}

double fixed_to_distance(std::uint16_t v) { return v / 65535.0; }

std::vector<std::uint8_t> encode(const CompressedObservation& obs) {
  const std::size_t count = obs.extrema.size();
  if (count > kMaxExtrema) throw Error(ErrorCode::kInvalidArgument, "too many extrema for one message");
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(count));
  out.push_back(kMagic);
  out.push_back(kVersion);
  put_u16(out, obs.sender_id);
  put_u16(out, angle_to_ticks(obs.sender_heading));
  out.push_back(static_cast<std::uint8_t>(count));
  for (const auto& e : obs.extrema) {
    put_u16(out, angle_to_ticks(e.phi));
    put_u16(out, distance_to_fixed(e.d));
  }
  std::vector<std::uint8_t> bitmap((count + 7) / 8, 0);
  for (std::size_t j = 0; j < count; ++j) {
    if (obs.extrema[j].kind == ExtremumKind::kMax) bitmap[j / 8] |= static_cast<std::uint8_t>(1u << (j % 8));
  }
  out.insert(out.end(), bitmap.begin(), bitmap.end());
  return out;
}

CompressedObservation decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize || bytes[0] != kMagic) {
    throw Error(ErrorCode::kMalformedHeader, "missing magic byte or short header");
  }
  if (bytes[1] != kVersion) throw Error(ErrorCode::kBadVersion, "unsupported wire version");
  const std::size_t count = bytes[6];
  const std::size_t expected = encoded_size(count);
  if (bytes.size() < expected) throw Error(ErrorCode::kTruncatedPayload, "payload shorter than extremum count");
  if (bytes.size() > expected) throw Error(ErrorCode::kMalformedHeader, "payload longer than extremum count");

  CompressedObservation obs;
  obs.sender_id = get_u16(bytes, 2);
  obs.sender_heading = ticks_to_angle(get_u16(bytes, 4));
  obs.extrema.resize(count);
  const std::size_t bitmap_at = kHeaderSize + 4 * count;
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t at = kHeaderSize + 4 * j;
    auto& e = obs.extrema[j];
    e.phi = ticks_to_angle(get_u16(bytes, at));
    e.d = fixed_to_distance(get_u16(bytes, at + 2));
    e.kind = (bytes[bitmap_at + j / 8] >> (j % 8)) & 1u ? ExtremumKind::kMax : ExtremumKind::kMin;
  }
  return obs;
}

}  // namespace fftnav::wire
