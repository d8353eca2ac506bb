#ifndef STALLINGS_CLI_CLI_HPP_
#define STALLINGS_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace stallings::cli {

  // Exit statuses of `run`.
  inline constexpr int exit_ok       = 0;
  inline constexpr int exit_negative = 1;  // "no" answer to a decision verb
  inline constexpr int exit_usage    = 2;  // bad arguments, words or files

  // Runs one command; `args` excludes the program name.
  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err);

}  // namespace stallings::cli

#endif  // STALLINGS_CLI_CLI_HPP_
