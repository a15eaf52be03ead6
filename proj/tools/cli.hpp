#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsym::cli {

// Exit codes: 0 success or verified, 1 verification failed, 2 input error.
enum Exit : int { Ok = 0, Failed = 1, InputError = 2 };

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsym::cli
