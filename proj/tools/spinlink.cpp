#include "spinlink/cli.hpp"

int main(int argc, char** argv) { return spinlink::cli::main(argc, argv); }
