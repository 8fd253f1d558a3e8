#include "meshsoc/hello.hpp"

#include <cmath>
#include <string>

namespace meshsoc::olsr {

namespace {

void check_unit(double value, const char* field) {
  if (!(value >= 0.0 && value <= 1.0))
    throw InvalidArgument(std::string(field) + " must lie in [0, 1]");
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint16_t get16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

}  // namespace

std::uint16_t quantize_closeness(double closeness) {
  check_unit(closeness, "closeness");
  return static_cast<std::uint16_t>(std::lround(closeness * 65535.0));
}

std::uint8_t quantize_nb_closeness(double closeness) {
  check_unit(closeness, "neighbour closeness");
  return static_cast<std::uint8_t>(std::lround(closeness * 255.0));
}

double dequantize_closeness(std::uint16_t field) noexcept { return field / 65535.0; }
double dequantize_nb_closeness(std::uint8_t field) noexcept { return field / 255.0; }

std::vector<std::uint8_t> encode_hello(const HelloMessage& message) {
  std::vector<std::uint8_t> out;
  out.reserve(4 + kLinkBlockSize * message.links.size());
  put16(out, quantize_closeness(message.closeness));
  out.push_back(message.htime);
  out.push_back(message.willingness);
  for (const auto& link : message.links) {
    out.push_back(link.link_code);
    out.push_back(quantize_nb_closeness(link.nb_closeness));
    put16(out, static_cast<std::uint16_t>(kLinkBlockSize));
    put32(out, link.neighbor_address);
  }
  return out;
}

HelloMessage decode_hello(std::span<const std::uint8_t> bytes, NodeId originator) {
  if (bytes.size() < 4) throw DecodeError("HELLO body shorter than its 4-byte header");
  HelloMessage m;
  m.originator = originator;
  m.closeness = dequantize_closeness(get16(bytes, 0));
  m.htime = bytes[2];
  m.willingness = bytes[3];

  std::size_t at = 4;
  while (at < bytes.size()) {
    if (bytes.size() - at < 4)
      throw DecodeError("truncated link message header at offset " + std::to_string(at));
    const auto size = get16(bytes, at + 2);
    if (size != kLinkBlockSize)
      throw DecodeError("link message size " + std::to_string(size) + " at offset " +
                        std::to_string(at) + ", expected 8");
    if (bytes.size() - at < kLinkBlockSize)
      throw DecodeError("truncated link message at offset " + std::to_string(at));
    LinkEntry link;
    link.link_code = bytes[at];
    link.nb_closeness = dequantize_nb_closeness(bytes[at + 1]);
    link.neighbor_address = get32(bytes, at + 4);
    m.links.push_back(link);
    at += kLinkBlockSize;
  }
  return m;
}

HelloMessage make_hello(const Graph& g, NodeId node, const CentralityScores& closeness,
                        std::uint8_t htime) {
  HelloMessage m;
  m.originator = node;
  m.closeness = closeness.value(node);
  m.htime = htime;
  for (const auto j : g.neighbors(g.index(node))) {
    const auto neighbor = g.id(j);
    m.links.push_back({kSymmetricNeighborLink, neighbor.value, closeness.value(neighbor)});
  }
  return m;
}

}  // namespace meshsoc::olsr
