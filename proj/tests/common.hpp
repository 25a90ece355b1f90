#pragma once

#include <filesystem>
#include <string>

#include "gts/model.hpp"

namespace testdata {

// Published GTS estimates for three daily-return series. The Bitcoin set is
// in 10%-return units.
inline const gts::GtsParams kSp500{-0.5274011, 0.5174702, -0.0888191, 0.6735391, 0.6083026, 1.2665066, 1.0807322};
inline const gts::GtsParams kSpy{-0.4145983, 0.5235145, 0.1531474, 0.6365290, 0.5118005, 1.2407793, 0.9354772};
inline const gts::GtsParams kBtc{0.0284876, -0.2560435, 0.3863913, 1.2868131, 0.2771887, 3.7929526, 1.9676313};
inline constexpr double kBtcUnitScale = 10.0;

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(GTS_FIXTURE_DIR) / name;
}

}  // namespace testdata
