#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meshsoc/centrality.hpp"
#include "meshsoc/error.hpp"
#include "meshsoc/graph.hpp"

namespace meshsoc::olsr {

// OLSR HELLO body with closeness carried in the formerly reserved fields.
//
//   0                   1                   2                   3
//   0 1 2 3 4 5 6 7 8 9 0 1 2 3 4 5 6 7 8 9 0 1 2 3 4 5 6 7 8 9 0 1
//  +-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+
//  |          Closeness            |     Htime     |  Willingness  |
//  +-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+
//  |   Link Code   | Nb_Closeness  |       Link Message Size       |
//  +-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+
//  |                  Neighbor Interface Address                   |
//  +-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+-+
//  :                  (one 8-byte block per neighbour)             :
//
// Big-endian. Closeness = round(c * 65535), Nb_Closeness = round(c * 255).
// Every link block advertises exactly one neighbour so each neighbour gets
// its own Nb_Closeness; Link Message Size is therefore always 8. The
// originator address lives in the enclosing OLSR message header and is not
// part of this body.

inline constexpr std::uint8_t kSymmetricNeighborLink = 0x06;  // SYM_NEIGH << 2 | SYM_LINK
inline constexpr std::uint8_t kWillDefault = 3;
inline constexpr std::size_t kLinkBlockSize = 8;

struct LinkEntry {
  std::uint8_t link_code = kSymmetricNeighborLink;
  std::uint32_t neighbor_address = 0;
  double nb_closeness = 0.0;

  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

struct HelloMessage {
  NodeId originator;
  double closeness = 0.0;
  std::uint8_t htime = 0;
  std::uint8_t willingness = kWillDefault;
  std::vector<LinkEntry> links;

  friend bool operator==(const HelloMessage&, const HelloMessage&) = default;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

std::uint16_t quantize_closeness(double closeness);
std::uint8_t quantize_nb_closeness(double closeness);
double dequantize_closeness(std::uint16_t field) noexcept;
double dequantize_nb_closeness(std::uint8_t field) noexcept;

/// Throws InvalidArgument for closeness values outside [0, 1].
std::vector<std::uint8_t> encode_hello(const HelloMessage& message);

/// `originator` comes from the OLSR message header. Throws DecodeError on a
/// truncated buffer or a Link Message Size other than 8.
HelloMessage decode_hello(std::span<const std::uint8_t> bytes, NodeId originator);

/// HELLO that `node` would broadcast: its own closeness and one symmetric
/// link per neighbour, addressed by NodeId value.
HelloMessage make_hello(const Graph& g, NodeId node, const CentralityScores& closeness,
                        std::uint8_t htime = 0);

}  // namespace meshsoc::olsr
