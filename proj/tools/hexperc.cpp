#include <iostream>
#include <string>
#include <vector>

#include "hexperc/cli.hpp"

int main(int argc, char** argv) {
  using namespace hexperc::cli;
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const Command cmd = parse_invocation(args);
    const CommandResult result = execute(cmd);
    std::cout << result.summary.dump(2) << '\n';
    for (const auto& f : result.files) std::cerr << "wrote " << f << '\n';
    if (result.summary.contains("refusal")) std::cerr << "refused: " << result.summary["refusal"].get<std::string>() << '\n';
    return result.exit_code;
  } catch (const HelpRequested& help) {
    std::cout << help.what() << '\n';
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun 'hexperc --help' for usage\n";
    return 2;
  } catch (const hexperc::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
