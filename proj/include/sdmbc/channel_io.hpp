#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sdmbc/estimation.hpp"

namespace sdmbc {

/// Malformed channel document (missing/ill-typed fields, bad shapes).
/// Non-normalized rows surface as std::invalid_argument from the table types.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChannelDocument {
    SdmbcSpec spec;
    DistortionMeasure distortion;
};

ChannelDocument load_channel(std::istream& in);
ChannelDocument load_channel_file(const std::string& path);

void save_channel(const SdmbcSpec& spec, const DistortionMeasure& d, std::ostream& out);
void save_channel_file(const SdmbcSpec& spec, const DistortionMeasure& d, const std::string& path);

}  // namespace sdmbc
