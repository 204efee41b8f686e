#pragma once

#include <memory>
#include <string>

#include "birs/error.hpp"
#include "birs/pipeline.hpp"

namespace birs::testing {

// Error code thrown by `fn`, or "none".
template <typename Fn>
std::string code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

inline std::string fixture(const std::string& rel) { return std::string(BIRS_FIXTURES) + "/" + rel; }

// Full fixture pipeline, loaded once per process.
inline const Artifacts& pavd2() {
  static const Artifacts a = load_artifacts(load_config(fixture("config.json")));
  return a;
}

inline const topo::TopoNode& node_named(const topo::TopoMap& t, const std::string& name) {
  return *t.find(t.resolve(name));
}

}  // namespace birs::testing

namespace birs::testing {

// Non-owning handle for APIs that take shared ownership.
inline std::shared_ptr<const Artifacts> borrow(const Artifacts& a) {
  return std::shared_ptr<const Artifacts>(&a, [](const Artifacts*) {});
}

}  // namespace birs::testing
