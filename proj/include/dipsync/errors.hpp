#pragma once

#include <stdexcept>
#include <string>

namespace dipsync {

// Argument errors reuse std::invalid_argument; everything below is specific
// to the simulator's contracts.

class UnreachableNode : public std::runtime_error {
 public:
  UnreachableNode(unsigned node, const std::string& what)
      : std::runtime_error(what), node_(node) {}
  unsigned node() const noexcept { return node_; }

 private:
  unsigned node_;
};

class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EpisodeAborted : public std::runtime_error {
 public:
  EpisodeAborted(long long tick, const std::string& what)
      : std::runtime_error(what), tick_(tick) {}
  long long tick() const noexcept { return tick_; }

 private:
  long long tick_;
};

}  // namespace dipsync
