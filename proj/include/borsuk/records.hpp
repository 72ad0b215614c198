#ifndef BORSUK_RECORDS_HPP
#define BORSUK_RECORDS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "borsuk/bound_engine.hpp"

// Flat "key = value" records. Doubles use the shortest round-trip form,
// big integers are written in decimal.

namespace borsuk {

std::string format_double(double value);
/// Throws std::invalid_argument on trailing garbage.
double parse_double(const std::string& text);

void write_certificate_record(std::ostream& out, const BoundCertificate& cert);
void write_rejection_record(std::ostream& out, const Rejection& rejection);

/// "key = value" lines in file order; blank lines and lines starting with '#' are skipped.
std::vector<std::pair<std::string, std::string>> parse_key_value_lines(std::istream& in);
/// Same as parse_key_value_lines, later keys win.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Inverse of write_certificate_record. Throws std::runtime_error on missing keys.
BoundCertificate parse_certificate_record(std::istream& in);

/// Writes via a temporary file in the same directory, then renames.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace borsuk

#endif
