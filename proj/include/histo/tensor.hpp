#pragma once

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace histo {

/// Dense row-major tensor of 64-bit reals.
struct Tensor {
    std::vector<std::uint32_t> dims;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::uint32_t> d) : dims(std::move(d)) {
        if (dims.empty()) throw std::invalid_argument("Tensor: dims must be nonempty");
        data.resize(element_count());
    }

    std::size_t element_count() const {
        std::size_t n = 1;
        for (std::uint32_t d : dims) n *= d;
        return n;
    }
};

/// Container format: magic "HDT1", u8 dtype tag (0 = f64), u8 ndim,
/// ndim x u32 little-endian dims, then the row-major little-endian payload.
void save_tensor_file(const Tensor& t, const std::filesystem::path& path);

/// Throws std::runtime_error with "bad magic", "length mismatch" or
/// "truncation" in the message on malformed input.
Tensor load_tensor_file(const std::filesystem::path& path);

}  // namespace histo
