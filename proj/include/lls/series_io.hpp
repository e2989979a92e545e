#pragma once

// Series files.
//
// Text format (version 1), one record per line, 1-based indices:
//
//   lls-series 1
//   genus 5
//   rank 2
//   dimension 4
//   degree 8
//   twist 4
//   component 1 split 0 4 0 4 moduli 0
//   rows 0:4 0:4 1:2 1:2
//   component 3 indecomposable 12 marked 2 4
//   component 1 line 0 8                 (rank 1)
//   node 1 match 1 2 3 4 forced none
//   node 2 match 1 2 3 4 forced 1>2 2>1
//   end
//
// `moduli 1` marks a split bundle whose summands are a free Jacobian choice;
// its coefficients are a representative. Directions are 1, 2 (summands) and
// m (marked line). Components come first in index order, then nodes.
//
// The structured format is a JSON document with "format": "lls-series" and
// "version": 1 carrying the same data.

#include <string>
#include <string_view>

#include "lls/error.hpp"
#include "lls/series.hpp"

namespace lls {

enum class SeriesFormat { Text, Structured };

inline constexpr int series_format_version = 1;

class ParseError : public Error {
public:
    ParseError(int line, std::string field, const std::string& message)
        : Error("parse", "line " + std::to_string(line) + ", " + field + ": " + message), line_(line),
          field_(std::move(field))
    {
    }

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

std::string serialize(const LimitSeries& series, SeriesFormat format = SeriesFormat::Text);

/// Detects the format from the first non-blank character.
LimitSeries parse_series(std::string_view input);

}  // namespace lls
