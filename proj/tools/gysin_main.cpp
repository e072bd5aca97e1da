#include <iostream>

#include "gysin_app.hpp"

int main(int argc, char** argv) { return gysin::app::run(argc, argv, std::cout, std::cerr); }
