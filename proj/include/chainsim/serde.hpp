#pragma once

#include <string>

#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

//! Line-oriented text encoding for fixtures and golden tests. One record per
//! line, fields tab-separated:
//!
//!   tx \t id \t sender \t price \t est_micro \t submit_round \t reads \t writes \t steps
//!   st \t settled_round \t cells
//!
//! where reads/writes are comma-joined addresses (or "-"), cells are
//! comma-joined addr=value pairs (or "-"), and steps are ";"-joined tokens
//! guard|gas|effects with guard "g<cell>,<op>,<lit>" or "-", effects a
//! comma-joined list of "w<cell>=<val>" / "t<acct>+<amt>" or "-".
std::string to_line(const Transaction& tx);
std::string to_line(const StateSnapshot& st);

Transaction tx_from_line(const std::string& line);   // throws std::runtime_error on malformed input
StateSnapshot state_from_line(const std::string& line);

} // namespace chainsim
