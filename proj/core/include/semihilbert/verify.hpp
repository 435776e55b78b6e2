#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semihilbert {

enum class Suite {
    adjoint,
    normal,
    spectra,
    range,
    mapping,
    cso,
    model,
    anderson,
    perturb,
    golden,
};

std::optional<Suite> suite_from_name(std::string_view name);
std::string suite_name(Suite s);

struct FailureRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0; // reseed an instance rng with this to replay
    std::string what;
};

struct SuiteReport {
    std::string suite;
    std::size_t instances = 0;
    std::vector<FailureRecord> failures;
    double max_residual = 0.0;
    double wall_ms = 0.0;

    bool passed() const noexcept { return failures.empty(); }
};

/// Runs `count` randomized instances of the named suite. Instance seeds
/// are derived from `seed` in counter mode, so reports are deterministic
/// and every failure can be replayed from its recorded seed.
SuiteReport run_suite(Suite suite, std::uint64_t seed, std::size_t count);

/// Recomputes the worked matrix and diagonal-model examples and checks
/// them against their stored values at tight tolerances.
SuiteReport golden_examples();

} // namespace semihilbert
