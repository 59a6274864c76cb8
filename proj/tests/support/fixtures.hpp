#pragma once

#include <memory>

#include "divdecomp/sieve.hpp"

namespace fixtures {

// Shared immutable tables; built once per test binary.
inline std::shared_ptr<const divdecomp::SieveTable> sieve_1e4() {
    static auto t = std::make_shared<const divdecomp::SieveTable>(divdecomp::build_sieve(10000));
    return t;
}

inline std::shared_ptr<const divdecomp::SieveTable> sieve_1e6() {
    static auto t = std::make_shared<const divdecomp::SieveTable>(divdecomp::build_sieve(1000000));
    return t;
}

}  // namespace fixtures
